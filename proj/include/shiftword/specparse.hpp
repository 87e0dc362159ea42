#ifndef SHIFTWORD_SPECPARSE_HPP
#define SHIFTWORD_SPECPARSE_HPP

#include <string>
#include <string_view>

#include "shiftword/amenable.hpp"
#include "shiftword/oracle.hpp"

namespace shiftword {

// Measure spec grammar (UTF-8, whitespace-insensitive s-expressions):
//   spec := (bernoulli RAT) | (markov RAT RAT) | (markov RAT RAT RAT)
//         | (empirical BITS) | (mixture (RAT spec)+)
//         | (pushforward N (perm INT+) (weights RAT+) (set BIT+))
//   RAT  := INT | INT/POSINT ; BITS := [01]+
// Lattice extension:
//   lspec := (product-bernoulli D RAT) | (torus D SIDE ROWS...)
// where ROWS are SIDE^{D-1} strings of SIDE bits, row-major.
// Parse errors report line and column.

MeasureOracle parse_measure_spec(std::string_view text);
MeasureOracle parse_measure_file(const std::string& path);

LatticeOracle parse_lattice_spec(std::string_view text);
LatticeOracle parse_lattice_file(const std::string& path);

}  // namespace shiftword

#endif
