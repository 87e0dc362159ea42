#include "shiftword/word.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

#include "shiftword/error.hpp"

namespace shiftword {

namespace {

std::vector<bool> parse_bits(std::string_view s, const char* what) {
  std::vector<bool> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c == '0')
      bits.push_back(false);
    else if (c == '1')
      bits.push_back(true);
    else
      throw Error(ErrorKind::Parse, std::string(what) + ": invalid character '" + c + "'");
  }
  return bits;
}

std::string render_bits(const std::vector<bool>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace

Pattern::Pattern(std::string_view bits01) : bits_(parse_bits(bits01, "pattern")) {}

std::string Pattern::str() const { return render_bits(bits_); }

Word::Word(std::string_view bits01) : bits_(parse_bits(bits01, "word")) {
  if (bits_.empty()) throw Error(ErrorKind::Domain, "word must have length >= 1");
}

Word::Word(std::vector<bool> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw Error(ErrorKind::Domain, "word must have length >= 1");
}

std::string Word::str() const { return render_bits(bits_); }

Pattern pattern_of_index(unsigned len, uint64_t index) {
  std::vector<bool> bits(len);
  for (unsigned t = 0; t < len; ++t) bits[t] = (index >> (len - 1 - t)) & 1;
  return Pattern(std::move(bits));
}

std::vector<Pattern> patterns_of_len(unsigned len) {
  if (len >= 63) throw Error(ErrorKind::Domain, "pattern enumeration too large");
  std::vector<Pattern> out;
  out.reserve(size_t(1) << len);
  for (uint64_t i = 0; i < (uint64_t(1) << len); ++i) out.push_back(pattern_of_index(len, i));
  return out;
}

std::vector<Pattern> patterns_up_to(unsigned max_len) {
  std::vector<Pattern> out;
  for (unsigned len = 0; len <= max_len; ++len)
    for (auto& p : patterns_of_len(len)) out.push_back(std::move(p));
  return out;
}

namespace {

bool occurs_cyclic_at(const std::vector<bool>& a, const Pattern& sigma, size_t i) {
  const size_t n = a.size();
  size_t pos = i;
  for (size_t t = 0; t < sigma.size(); ++t) {
    if (a[pos] != sigma.bit(t)) return false;
    if (++pos == n) pos = 0;
  }
  return true;
}

}  // namespace

std::vector<size_t> occurrence_positions(const Word& a, const Pattern& sigma) {
  std::vector<size_t> out;
  for (size_t i = 0; i < a.size(); ++i)
    if (occurs_cyclic_at(a.bits(), sigma, i)) out.push_back(i);
  return out;
}

size_t occurrence_count(const Word& a, const Pattern& sigma) {
  size_t count = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (occurs_cyclic_at(a.bits(), sigma, i)) ++count;
  return count;
}

Rat density(const Word& a, const Pattern& sigma) {
  return Rat(Int(occurrence_count(a, sigma)), Int(a.size()));
}

Word concat(const std::vector<std::pair<Word, uint64_t>>& segments) {
  std::vector<bool> bits;
  for (const auto& [w, reps] : segments)
    for (uint64_t r = 0; r < reps; ++r)
      bits.insert(bits.end(), w.bits().begin(), w.bits().end());
  if (bits.empty()) throw Error(ErrorKind::EmptyResult, "concatenation has total length 0");
  return Word(std::move(bits));
}

Word repeat_truncate(const Word& a, size_t n) {
  if (n == 0) throw Error(ErrorKind::Domain, "target length must be >= 1");
  std::vector<bool> bits;
  bits.reserve(n);
  while (bits.size() + a.size() <= n) bits.insert(bits.end(), a.bits().begin(), a.bits().end());
  for (size_t i = 0; bits.size() < n; ++i) bits.push_back(a.bit(i));
  return Word(std::move(bits));
}

Word rotate(const Word& a, size_t r) {
  const size_t n = a.size();
  std::vector<bool> bits(n);
  for (size_t i = 0; i < n; ++i) bits[i] = a.bit((i + r) % n);
  return Word(std::move(bits));
}

Rat prefix_frequency(const Word& a, const Pattern& sigma, size_t n) {
  if (n == 0) throw Error(ErrorKind::Domain, "prefix length must be >= 1");
  const size_t lookahead = sigma.size() == 0 ? 0 : sigma.size() - 1;
  if (a.size() < n + lookahead)
    throw Error(ErrorKind::InsufficientPrefix,
                "need " + std::to_string(n + lookahead) + " bits, have " + std::to_string(a.size()));
  size_t count = 0;
  for (size_t i = 0; i < n; ++i) {
    bool ok = true;
    for (size_t t = 0; t < sigma.size(); ++t)
      if (a.bit(i + t) != sigma.bit(t)) {
        ok = false;
        break;
      }
    if (ok) ++count;
  }
  return Rat(Int(count), Int(n));
}

std::vector<uint64_t> cyclic_window_counts(const Word& a, unsigned len, unsigned workers) {
  if (len == 0) return {uint64_t(a.size())};
  if (len >= 31) throw Error(ErrorKind::Domain, "window length too large");
  const size_t n = a.size();
  const uint64_t mask = (uint64_t(1) << len) - 1;

  auto scan = [&](size_t begin, size_t end, std::vector<uint64_t>& counts) {
    // rolling window, cyclic indices
    uint64_t w = 0;
    for (size_t t = 0; t < len; ++t) w = (w << 1) | uint64_t(a.bit((begin + t) % n));
    size_t next = (begin + len) % n;
    for (size_t i = begin; i < end; ++i) {
      ++counts[w];
      w = ((w << 1) & mask) | uint64_t(a.bit(next));
      if (++next == n) next = 0;
    }
  };

  if (workers <= 1 || n < 4096) {
    std::vector<uint64_t> counts(size_t(1) << len, 0);
    scan(0, n, counts);
    return counts;
  }
  const unsigned chunks = std::min<size_t>(workers, n);
  std::vector<std::vector<uint64_t>> partial(chunks, std::vector<uint64_t>(size_t(1) << len, 0));
  std::vector<std::thread> threads;
  for (unsigned c = 0; c < chunks; ++c) {
    size_t begin = n * c / chunks, end = n * (c + 1) / chunks;
    threads.emplace_back([&, c, begin, end] { scan(begin, end, partial[c]); });
  }
  for (auto& t : threads) t.join();
  std::vector<uint64_t> counts(size_t(1) << len, 0);
  for (const auto& p : partial)
    for (size_t w = 0; w < counts.size(); ++w) counts[w] += p[w];
  return counts;
}

std::vector<uint64_t> prefix_window_counts(const Word& a, unsigned len, size_t n) {
  if (len == 0) return {uint64_t(n)};
  if (len >= 31) throw Error(ErrorKind::Domain, "window length too large");
  if (a.size() < n + len - 1)
    throw Error(ErrorKind::InsufficientPrefix,
                "need " + std::to_string(n + len - 1) + " bits, have " + std::to_string(a.size()));
  const uint64_t mask = (uint64_t(1) << len) - 1;
  std::vector<uint64_t> counts(size_t(1) << len, 0);
  uint64_t w = 0;
  for (size_t t = 0; t + 1 < len; ++t) w = (w << 1) | uint64_t(a.bit(t));
  for (size_t i = 0; i < n; ++i) {
    w = ((w << 1) & mask) | uint64_t(a.bit(i + len - 1));
    ++counts[w];
  }
  return counts;
}

Word read_word_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::string line, extra;
  std::getline(in, line);
  if (std::getline(in, extra) && !extra.empty())
    throw Error(ErrorKind::Parse, path + ": expected a single line of bits");
  try {
    return Word(line);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

void write_word_file(const std::string& path, const Word& a) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot open '" + path + "' for writing");
  out << a.str() << "\n";
}

std::vector<Word> read_word_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::vector<Word> words;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      words.emplace_back(line);
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return words;
}

}  // namespace shiftword
