#ifndef SHIFTWORD_INVERSE_HPP
#define SHIFTWORD_INVERSE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "shiftword/oracle.hpp"
#include "shiftword/rat.hpp"
#include "shiftword/word.hpp"

namespace shiftword {

// Construction parameters: approximate all patterns of length <= j to within
// eps, using block length k, block count l, and oracle precision delta.
struct Params {
  unsigned j = 1;
  Rat eps;
  Int block_len;    // k
  Int block_count;  // l
  Rat delta;
};

// Worst-case parameters for which the error ledger
//   3(j-1)/k + 2^k/l + 2^{k+1} delta < eps
// is guaranteed: k = max(j, ceil(12 j/eps)), l = ceil(2^{k+2}/eps),
// delta = eps * 2^{-(k+3)}. Sizes may be astronomically large; computing
// them is cheap even when constructing the word is not.
Params fallback_params(unsigned j, const Rat& eps);

// The ledger bound at arbitrary parameters (exact rational).
Rat ledger_bound(unsigned j, const Int& block_len, const Int& block_count, const Rat& delta);

// Block counts a_tau via prefix rounding: query every length-k pattern at
// precision delta, clamp to [0,1], renormalize to total mass 1, then set
// b_i = round_half_up(l * prefix_i) and a_i = b_{i+1} - b_i. Guarantees
// sum a = l and a_i >= 0.
struct BlockCounts {
  unsigned block_len = 0;          // k
  uint64_t total = 0;              // l
  std::vector<uint64_t> copies;    // a_tau, lexicographic tau order
  std::vector<uint64_t> prefix;    // b_0 .. b_{2^k}
};

BlockCounts block_counts(const MeasureOracle& m, unsigned block_len, uint64_t total,
                         const Rat& delta);

// a_0 copies of tau_0, then a_1 copies of tau_1, ...; length is exactly k*l.
Word assemble_blocks(const BlockCounts& bc);

struct VerifyRow {
  Pattern sigma;
  Rat oracle_value;
  Rat word_density;
  Rat residual;
};

struct VerifyReport {
  bool passed = false;         // max residual + delta < eps
  Rat eps;
  Rat delta;
  Rat max_residual;
  Pattern worst;               // last maximal sigma in length-then-lex order
  Rat certified_error;         // max residual, plus delta when the oracle is inexact
  std::vector<VerifyRow> rows; // length-then-lex order, |sigma| <= j
};

// Exhaustive density scan of A against the oracle over all |sigma| <= j.
// The pass condition max|q - D| + delta < eps makes the certificate sound
// against the true measure, not just the queried values.
VerifyReport verify(const Word& a, const MeasureOracle& m, unsigned j, const Rat& eps,
                    const Rat& delta, unsigned workers = 1);

struct ApproxResult {
  Word word;
  Params params;
  Rat certified_error;
  Rat theoretical_bound;  // ledger bound at the parameters used
  VerifyReport report;
};

struct BuildResult {
  bool ok = false;
  std::optional<ApproxResult> approx;  // engaged iff ok
  Rat best_error;                      // best certified error over the search
  Int fallback_word_len;               // fallback k*l, for the size-bound contract
  uint64_t attempts = 0;
};

// Adaptive search for a (j,eps)-good word: block length ascending from 1,
// block count doubling from 2 up to min(budget/k, ceil(2^{k+2}/eps)); the
// first assembled word whose verification passes wins. Deterministic, and
// guaranteed to succeed at or before fallback_params(j,eps) when the budget
// allows words that long. `budget` caps the word length.
BuildResult build(const MeasureOracle& m, unsigned j, const Rat& eps, uint64_t budget,
                  unsigned workers = 1);

// Length threshold above which padding is guaranteed to re-verify.
Int pad_min_length(const ApproxResult& half, unsigned j, const Rat& eps);

// Repeat-and-truncate a result built at tolerance eps/2 to exact length n,
// then re-verify at eps. Requires n >= one full copy.
ApproxResult pad_to(const ApproxResult& half, uint64_t n, const MeasureOracle& m, const Rat& eps,
                    unsigned workers = 1);

// A provider maps (j, eps) to a (j,eps)-good word.
using ApproxProvider = std::function<Word(unsigned, const Rat&)>;

ApproxProvider build_provider(const MeasureOracle& m, uint64_t budget, unsigned workers = 1);

// Computing the measure back from good approximations: the density of sigma
// in provider(max(|sigma|,1), eps) lies within eps of mu([sigma]).
Rat measure_from_approx(const ApproxProvider& provider, const Pattern& sigma, const Rat& eps);

}  // namespace shiftword

#endif
