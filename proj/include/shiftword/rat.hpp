#ifndef SHIFTWORD_RAT_HPP
#define SHIFTWORD_RAT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "shiftword/error.hpp"

namespace shiftword {

// All measure values, tolerances and certificates are exact rationals.
// cpp_rational keeps canonical form (gcd 1, positive denominator).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Renders "p/q", or just "p" when the denominator is 1.
std::string rat_str(const Rat& q);

// Accepts INT or INT/POSINT with an optional leading sign on the numerator.
Rat parse_rat(std::string_view text);

// 2^e for possibly negative e.
Rat pow2(long e);

// floor/ceil to Int.
Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

// Round-half-up: floor(q + 1/2). b_i rounding in the block-count construction.
Int round_half_up(const Rat& q);

// Least t >= 0 with 2^t >= 1/eps; requires 0 < eps <= 1.
long ceil_log2_inv(const Rat& eps);

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

}  // namespace shiftword

#endif
