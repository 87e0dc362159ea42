#include "shiftword/generic.hpp"

#include <algorithm>

#include "shiftword/error.hpp"

namespace shiftword {

namespace {

Word built_block(const MeasureOracle& m, unsigned stage, uint64_t budget, unsigned workers) {
  BuildResult r = build(m, stage, pow2(-long(stage)), budget, workers);
  if (!r.ok)
    throw Error(ErrorKind::BudgetExceeded,
                "stage " + std::to_string(stage) + " block exceeds budget " +
                    std::to_string(budget) + "; best certified error " + rat_str(r.best_error));
  return r.approx->word;
}

// least r with k * 2^stage < r * block_len
Int min_reps(const Int& k, unsigned stage, const Int& block_len) {
  return (k << stage) / block_len + 1;
}

}  // namespace

void extend_schedule(Schedule& sched, const MeasureOracle& m, unsigned stage_count,
                     uint64_t budget, unsigned workers) {
  while (sched.stages.size() < stage_count) {
    const unsigned stage = unsigned(sched.stages.size()) + 1;
    while (sched.blocks.size() < stage + 1)  // A_stage and the lookahead A_{stage+1}
      sched.blocks.push_back(built_block(m, unsigned(sched.blocks.size()) + 1, budget, workers));
    const Word& block = sched.blocks[stage - 1];
    const Int prev_len = sched.length();
    const Int k = prev_len + Int(sched.blocks[stage].size());
    const Int reps = min_reps(k, stage, Int(block.size()));
    sched.stages.push_back(Stage{block, reps, prev_len + reps * Int(block.size())});
  }
}

Schedule make_schedule(const MeasureOracle& m, unsigned stage_count, uint64_t budget,
                       unsigned workers) {
  Schedule sched;
  extend_schedule(sched, m, stage_count, budget, workers);
  return sched;
}

namespace {

// Materializes bits [0, n) of the stream described by the schedule,
// extending it as needed.
std::vector<bool> materialize(Schedule& sched, const MeasureOracle& m, size_t n, uint64_t budget,
                              unsigned workers) {
  std::vector<bool> bits;
  bits.reserve(n);
  unsigned stage = 0;
  while (bits.size() < n) {
    ++stage;
    extend_schedule(sched, m, stage, budget, workers);
    const Stage& s = sched.stages[stage - 1];
    for (Int r = 0; r < s.reps && bits.size() < n; ++r)
      for (size_t i = 0; i < s.block.size() && bits.size() < n; ++i)
        bits.push_back(s.block.bit(i));
  }
  return bits;
}

}  // namespace

Word generic_bits(const MeasureOracle& m, size_t n, uint64_t budget, unsigned workers) {
  if (n < 1) throw Error(ErrorKind::Domain, "bit count must be >= 1");
  Schedule sched;
  return Word(materialize(sched, m, n, budget, workers));
}

void GenericStream::ensure(size_t size) {
  if (buffer_.size() >= size) return;
  buffer_ = materialize(sched_, oracle_, size, budget_, workers_);
}

Word GenericStream::take(size_t count) {
  if (count < 1) throw Error(ErrorKind::Domain, "bit count must be >= 1");
  ensure(cursor_ + count);
  std::vector<bool> out(buffer_.begin() + long(cursor_), buffer_.begin() + long(cursor_ + count));
  cursor_ += count;
  return Word(std::move(out));
}

unsigned certify_stage(unsigned j, const Rat& eps) {
  if (j < 1) throw Error(ErrorKind::Domain, "j must be >= 1");
  return std::max<long>(j, ceil_log2_inv(eps) + 1);
}

Int m_actual(unsigned j, const Rat& eps, const Schedule& sched) {
  const unsigned stage = certify_stage(j, eps);
  if (sched.stages.size() < stage)
    throw Error(ErrorKind::ScheduleTooShort, "schedule has " + std::to_string(sched.stages.size()) +
                                                 " stages, need " + std::to_string(stage));
  return sched.stages[stage - 1].cum_len;
}

Int m_universal(unsigned j, const Rat& eps) {
  const unsigned stage_count = certify_stage(j, eps);
  auto fallback_len = [](unsigned stage) {
    const Params p = fallback_params(stage, pow2(-long(stage)));
    return p.block_len * p.block_count;
  };
  Int m(0);
  for (unsigned stage = 1; stage <= stage_count; ++stage) {
    const Int k = m + fallback_len(stage + 1);
    const Int len = fallback_len(stage);
    m += min_reps(k, stage, len) * len;
  }
  return m;
}

GenericReport check_generic(const MeasureOracle& m, unsigned j, const Rat& eps, uint64_t budget,
                            unsigned workers) {
  GenericReport report;
  report.eps = eps;
  report.gate = eps + eps / 4;
  report.m_universal = m_universal(j, eps);

  Schedule sched = make_schedule(m, certify_stage(j, eps), budget, workers);
  report.m_actual = m_actual(j, eps, sched);
  if (report.m_actual + Int(j) > Int(uint64_t(1) << 33))
    throw Error(ErrorKind::BudgetExceeded, "certification prefix too long to materialize");
  const size_t n = report.m_actual.convert_to<size_t>();
  report.prefix_len = n;
  report.prefix = Word(materialize(sched, m, n + j - 1, budget, workers));

  const Rat q_delta = eps / 4;
  const std::vector<uint64_t> window = prefix_window_counts(*report.prefix, j, n);
  report.max_residual = 0;
  for (unsigned len = 0; len <= j; ++len) {
    const unsigned shift = j - len;
    for (uint64_t idx = 0; idx < (uint64_t(1) << len); ++idx) {
      uint64_t count = 0;
      for (uint64_t w = idx << shift; w < ((idx + 1) << shift); ++w) count += window[w];
      GenericRow row;
      row.sigma = pattern_of_index(len, idx);
      row.frequency = Rat(Int(count), Int(n));
      row.oracle_value = m.query(row.sigma, q_delta);
      row.residual = rat_abs(row.oracle_value - row.frequency);
      if (row.residual >= report.max_residual) {
        report.max_residual = row.residual;
        report.worst = row.sigma;
      }
      report.rows.push_back(std::move(row));
    }
  }
  report.passed = report.max_residual < report.gate;
  return report;
}

}  // namespace shiftword
