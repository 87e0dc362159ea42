#include "shiftword/specparse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <variant>
#include <vector>

#include "shiftword/error.hpp"

namespace shiftword {

namespace {

struct Node {
  // atom text, or list of children
  std::string atom;
  std::vector<Node> children;
  bool is_list = false;
  size_t line = 1, col = 1;
};

[[noreturn]] void fail(size_t line, size_t col, const std::string& msg) {
  throw Error(ErrorKind::Parse,
              "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

[[noreturn]] void fail(const Node& at, const std::string& msg) { fail(at.line, at.col, msg); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  struct Token {
    enum Kind { LParen, RParen, Atom, End } kind;
    std::string text;
    size_t line, col;
  };

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    Token t{Token::End, "", line_, col_};
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    if (c == '(') {
      t.kind = Token::LParen;
      advance();
      return t;
    }
    if (c == ')') {
      t.kind = Token::RParen;
      advance();
      return t;
    }
    t.kind = Token::Atom;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      t.text.push_back(text_[pos_]);
      advance();
    }
    return t;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  size_t line_ = 1, col_ = 1;
};

Node parse_node(Lexer& lex, const Lexer::Token& first) {
  Node node;
  node.line = first.line;
  node.col = first.col;
  switch (first.kind) {
    case Lexer::Token::Atom:
      node.atom = first.text;
      return node;
    case Lexer::Token::LParen: {
      node.is_list = true;
      for (;;) {
        Lexer::Token t = lex.next();
        if (t.kind == Lexer::Token::RParen) return node;
        if (t.kind == Lexer::Token::End) fail(t.line, t.col, "unterminated '('");
        node.children.push_back(parse_node(lex, t));
      }
    }
    case Lexer::Token::RParen:
      fail(first.line, first.col, "unexpected ')'");
    case Lexer::Token::End:
      fail(first.line, first.col, "empty spec");
  }
  fail(first.line, first.col, "unreachable");
}

Node parse_tree(std::string_view text) {
  Lexer lex(text);
  Lexer::Token first = lex.next();
  Node root = parse_node(lex, first);
  Lexer::Token rest = lex.next();
  if (rest.kind != Lexer::Token::End) fail(rest.line, rest.col, "trailing content after spec");
  return root;
}

const Node& arg(const Node& list, size_t i) { return list.children[i]; }

const std::string& atom_text(const Node& n, const char* what) {
  if (n.is_list) fail(n, std::string("expected ") + what);
  return n.atom;
}

Rat node_rat(const Node& n) {
  try {
    return parse_rat(atom_text(n, "a rational"));
  } catch (const Error&) {
    fail(n, "expected a rational (INT or INT/POSINT), got '" + n.atom + "'");
  }
}

uint64_t node_uint(const Node& n, const char* what) {
  const std::string& s = atom_text(n, what);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    fail(n, std::string("expected ") + what + ", got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (...) {
    fail(n, std::string(what) + " out of range");
  }
}

std::vector<bool> node_bits(const Node& n, const char* what) {
  const std::string& s = atom_text(n, what);
  std::vector<bool> bits;
  for (char c : s) {
    if (c != '0' && c != '1') fail(n, std::string("expected ") + what + ", got '" + s + "'");
    bits.push_back(c == '1');
  }
  if (bits.empty()) fail(n, std::string("expected ") + what);
  return bits;
}

void expect_args(const Node& list, size_t lo, size_t hi, const char* form) {
  const size_t n = list.children.size() - 1;
  if (n < lo || n > hi)
    fail(list, std::string(form) + ": wrong number of arguments (" + std::to_string(n) + ")");
}

// wraps domain errors from the constructors with the node position
template <typename F>
auto at_node(const Node& n, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(n, e.what());
  }
}

MeasureOracle interp_measure(const Node& node) {
  if (!node.is_list || node.children.empty() || node.children[0].is_list)
    fail(node, "expected (bernoulli ...), (markov ...), (empirical ...), (mixture ...) or "
               "(pushforward ...)");
  const std::string& head = node.children[0].atom;

  if (head == "bernoulli") {
    expect_args(node, 1, 1, "bernoulli");
    return at_node(node, [&] { return bernoulli(node_rat(arg(node, 1))); });
  }
  if (head == "markov") {
    expect_args(node, 2, 3, "markov");
    std::optional<Rat> pi1;
    if (node.children.size() == 4) pi1 = node_rat(arg(node, 3));
    return at_node(node, [&] { return markov(node_rat(arg(node, 1)), node_rat(arg(node, 2)), pi1); });
  }
  if (head == "empirical") {
    expect_args(node, 1, 1, "empirical");
    return at_node(node, [&] { return empirical(Word(node_bits(arg(node, 1), "a bit string"))); });
  }
  if (head == "mixture") {
    expect_args(node, 1, SIZE_MAX, "mixture");
    std::vector<std::pair<Rat, MeasureOracle>> components;
    for (size_t i = 1; i < node.children.size(); ++i) {
      const Node& comp = node.children[i];
      if (!comp.is_list || comp.children.size() != 2)
        fail(comp, "mixture component must be (WEIGHT SPEC)");
      components.emplace_back(node_rat(arg(comp, 0)), interp_measure(arg(comp, 1)));
    }
    return at_node(node, [&] { return mixture(components); });
  }
  if (head == "pushforward") {
    expect_args(node, 4, 4, "pushforward");
    const uint64_t n = node_uint(arg(node, 1), "a state count");
    auto section = [&](size_t i, const char* name) -> const Node& {
      const Node& s = arg(node, i);
      if (!s.is_list || s.children.empty() || s.children[0].is_list ||
          s.children[0].atom != name)
        fail(s, std::string("expected (") + name + " ...)");
      if (s.children.size() != n + 1)
        fail(s, std::string(name) + " needs exactly " + std::to_string(n) + " entries");
      return s;
    };
    FiniteMPS sys;
    const Node& perm = section(2, "perm");
    for (size_t i = 1; i <= n; ++i)
      sys.perm.push_back(size_t(node_uint(arg(perm, i), "a state index")));
    const Node& weights = section(3, "weights");
    for (size_t i = 1; i <= n; ++i) sys.weights.push_back(node_rat(arg(weights, i)));
    const Node& set = section(4, "set");
    for (size_t i = 1; i <= n; ++i) {
      const std::vector<bool> bit = node_bits(arg(set, i), "a bit");
      if (bit.size() != 1) fail(arg(set, i), "set entries must be single bits");
      sys.members.push_back(bit[0]);
    }
    return at_node(node, [&] { return pushforward(sys); });
  }
  fail(node.children[0], "unknown measure constructor '" + head + "'");
}

LatticeOracle interp_lattice(const Node& node) {
  if (!node.is_list || node.children.empty() || node.children[0].is_list)
    fail(node, "expected (product-bernoulli ...) or (torus ...)");
  const std::string& head = node.children[0].atom;

  if (head == "product-bernoulli") {
    expect_args(node, 2, 2, "product-bernoulli");
    const unsigned d = unsigned(node_uint(arg(node, 1), "a dimension"));
    return at_node(node, [&] { return product_bernoulli_zd(d, node_rat(arg(node, 2))); });
  }
  if (head == "torus") {
    expect_args(node, 3, SIZE_MAX, "torus");
    const unsigned d = unsigned(node_uint(arg(node, 1), "a dimension"));
    const unsigned side = unsigned(node_uint(arg(node, 2), "a side length"));
    uint64_t rows = 1;
    for (unsigned i = 0; i + 1 < d; ++i) rows *= side;
    if (node.children.size() != 3 + rows)
      fail(node, "torus needs side^(d-1) = " + std::to_string(rows) + " rows");
    std::vector<bool> config;
    for (uint64_t r = 0; r < rows; ++r) {
      std::vector<bool> row = node_bits(arg(node, 3 + r), "a bit row");
      if (row.size() != side) fail(arg(node, 3 + r), "row must have exactly side bits");
      config.insert(config.end(), row.begin(), row.end());
    }
    return at_node(node, [&] { return torus_empirical_zd(d, side, config); });
  }
  fail(node.children[0], "unknown lattice measure constructor '" + head + "'");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

MeasureOracle parse_measure_spec(std::string_view text) { return interp_measure(parse_tree(text)); }

MeasureOracle parse_measure_file(const std::string& path) {
  return parse_measure_spec(slurp(path));
}

LatticeOracle parse_lattice_spec(std::string_view text) { return interp_lattice(parse_tree(text)); }

LatticeOracle parse_lattice_file(const std::string& path) {
  return parse_lattice_spec(slurp(path));
}

}  // namespace shiftword
