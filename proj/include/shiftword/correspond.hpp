#ifndef SHIFTWORD_CORRESPOND_HPP
#define SHIFTWORD_CORRESPOND_HPP

#include <vector>

#include "shiftword/rat.hpp"
#include "shiftword/word.hpp"

namespace shiftword {

// Exact cyclic densities D_{A_n}(sigma) over a finite word family and all
// patterns up to a length bound.
struct DensityTable {
  std::vector<Word> words;
  std::vector<Pattern> patterns;       // length-then-lex
  std::vector<std::vector<Rat>> cells; // cells[word][pattern]
};

DensityTable density_table(const std::vector<Word>& words, unsigned max_j);

// Finite surrogate of the weak-limit subsequence extraction: one greedy pass
// per pattern keeps the largest bucket of tol-width density intervals
// [m*tol, (m+1)*tol), ties resolved toward the smaller lower endpoint.
// Survivors have pairwise density gaps <= tol for every tabled pattern, and
// the result is never empty on nonempty input.
std::vector<size_t> extract_subsequence(const DensityTable& table, const Rat& tol);

}  // namespace shiftword

#endif
