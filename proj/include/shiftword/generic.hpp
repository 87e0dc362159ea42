#ifndef SHIFTWORD_GENERIC_HPP
#define SHIFTWORD_GENERIC_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "shiftword/inverse.hpp"
#include "shiftword/oracle.hpp"
#include "shiftword/rat.hpp"
#include "shiftword/word.hpp"

namespace shiftword {

// Stage l of the generic point: the (l, 2^{-l})-good block A_l repeated r_l
// times, with cumulative length m_l. r_l is the least integer satisfying
// (m_{l-1} + len(A_{l+1})) * 2^l < r_l * len(A_l), so each stage swamps both
// the prefix before it and the one lookahead block after it.
struct Stage {
  Word block;
  Int reps;
  Int cum_len;
};

struct Schedule {
  std::vector<Stage> stages;   // stage l at index l-1
  std::vector<Word> blocks;    // blocks[i] = A_{i+1}; holds one lookahead block

  Int length() const { return stages.empty() ? Int(0) : stages.back().cum_len; }
};

// Extends the schedule in place through stage `stage_count`. Blocks come from
// the adaptive build at (l, 2^{-l}); throws BudgetExceeded if one fails.
void extend_schedule(Schedule& sched, const MeasureOracle& m, unsigned stage_count,
                     uint64_t budget, unsigned workers = 1);

Schedule make_schedule(const MeasureOracle& m, unsigned stage_count, uint64_t budget,
                       unsigned workers = 1);

// First n bits of the generic point determined by the schedule, extending it
// lazily. Deterministic: the result is a prefix of any longer request.
Word generic_bits(const MeasureOracle& m, size_t n, uint64_t budget, unsigned workers = 1);

// Incremental reader over the same stream.
class GenericStream {
 public:
  GenericStream(MeasureOracle m, uint64_t budget, unsigned workers = 1)
      : oracle_(std::move(m)), budget_(budget), workers_(workers) {}

  Word take(size_t count);
  size_t cursor() const { return cursor_; }
  const Schedule& schedule() const { return sched_; }

 private:
  void ensure(size_t size);

  MeasureOracle oracle_;
  uint64_t budget_;
  unsigned workers_;
  Schedule sched_;
  std::vector<bool> buffer_;
  size_t cursor_ = 0;
};

// Stage index certifying (j, eps): max(j, ceil(log2(1/eps)) + 1).
unsigned certify_stage(unsigned j, const Rat& eps);

// m_{certify_stage(j,eps)} of this schedule: past that many bits, every
// prefix frequency of every |sigma| <= j is within eps of mu([sigma]).
Int m_actual(unsigned j, const Rat& eps, const Schedule& sched);

// The same recurrence evaluated with fallback_params block lengths: a
// measure-independent (typically astronomical) bound.
Int m_universal(unsigned j, const Rat& eps);

struct GenericRow {
  Pattern sigma;
  Rat oracle_value;
  Rat frequency;
  Rat residual;
};

struct GenericReport {
  bool passed = false;
  Rat eps;
  Rat gate;          // eps + eps/4: slack for querying at precision eps/4
  Int m_actual;
  Int m_universal;
  uint64_t prefix_len = 0;  // n = m_actual, the scanned prefix
  Rat max_residual;
  Pattern worst;
  std::vector<GenericRow> rows;
  std::optional<Word> prefix;  // the n + j - 1 emitted bits
};

// Emits m_actual(j,eps) + j - 1 bits and checks every prefix frequency
// against the oracle. Failure indicates an implementation bug.
GenericReport check_generic(const MeasureOracle& m, unsigned j, const Rat& eps, uint64_t budget,
                            unsigned workers = 1);

}  // namespace shiftword

#endif
