#include "shiftword/rat.hpp"

#include <cctype>

namespace shiftword {

std::string rat_str(const Rat& q) {
  Int n = rat_num(q), d = rat_den(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Rat parse_rat(std::string_view text) {
  auto fail = [&] { throw Error(ErrorKind::Parse, "invalid rational '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  size_t i = 0;
  if (text[i] == '+' || text[i] == '-') ++i;
  size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) fail();
  Int num(std::string(text.substr(0, i)));
  if (i == text.size()) return Rat(num);
  if (text[i] != '/') fail();
  ++i;
  size_t den_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == den_start || i != text.size()) fail();
  Int den(std::string(text.substr(den_start)));
  if (den == 0) fail();
  return Rat(num, den);
}

Rat pow2(long e) {
  if (e >= 0) return Rat(Int(1) << static_cast<unsigned>(e));
  return Rat(Int(1), Int(1) << static_cast<unsigned>(-e));
}

Int floor_rat(const Rat& q) {
  Int n = rat_num(q), d = rat_den(q);
  Int t = n / d;
  if (n < 0 && t * d != n) --t;
  return t;
}

Int ceil_rat(const Rat& q) {
  Int n = rat_num(q), d = rat_den(q);
  Int t = n / d;
  if (n > 0 && t * d != n) ++t;
  return t;
}

Int round_half_up(const Rat& q) { return floor_rat(q + Rat(1, 2)); }

long ceil_log2_inv(const Rat& eps) {
  if (eps <= 0 || eps > 1) throw Error(ErrorKind::Domain, "eps must lie in (0,1]");
  long t = 0;
  Rat p(1);
  while (p * eps < 1) {
    p *= 2;
    ++t;
  }
  return t;
}

}  // namespace shiftword
