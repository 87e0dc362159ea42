#include "shiftword/inverse.hpp"

#include <algorithm>

#include "shiftword/error.hpp"

namespace shiftword {

namespace {

void check_eps(const Rat& eps) {
  if (eps <= 0 || eps > 1) throw Error(ErrorKind::Domain, "eps must lie in (0,1]");
}

unsigned require_machine(const Int& v, const char* what) {
  if (v < 0 || v > 1000000) throw Error(ErrorKind::Domain, std::string(what) + " out of range");
  return v.convert_to<unsigned>();
}

// Clamped oracle answers for every length-k pattern, in lexicographic order.
struct BlockQueries {
  unsigned block_len;
  Rat delta;
  std::vector<Rat> values;
  Rat total;
};

BlockQueries query_blocks(const MeasureOracle& m, unsigned block_len, const Rat& delta) {
  if (block_len >= 31) throw Error(ErrorKind::Domain, "block length too large to enumerate");
  BlockQueries q{block_len, delta, {}, Rat(0)};
  const uint64_t count = uint64_t(1) << block_len;
  q.values.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    Rat v = m.query(pattern_of_index(block_len, i), delta);
    if (v < 0) v = 0;
    if (v > 1) v = 1;
    q.values.push_back(v);
    q.total += v;
  }
  if (q.total == 0)
    throw Error(ErrorKind::DegenerateOracle, "all block queries returned mass 0");
  return q;
}

BlockCounts counts_from_queries(const BlockQueries& q, uint64_t total) {
  BlockCounts bc;
  bc.block_len = q.block_len;
  bc.total = total;
  const size_t count = q.values.size();
  bc.prefix.reserve(count + 1);
  bc.copies.reserve(count);
  Rat prefix(0);
  bc.prefix.push_back(0);
  for (size_t i = 0; i < count; ++i) {
    prefix += q.values[i];
    // b_{i+1} = round(l * renormalized prefix); monotone, so a_i >= 0
    Int b = round_half_up(Rat(Int(total)) * prefix / q.total);
    bc.prefix.push_back(b.convert_to<uint64_t>());
    bc.copies.push_back(bc.prefix[i + 1] - bc.prefix[i]);
  }
  return bc;
}

}  // namespace

Params fallback_params(unsigned j, const Rat& eps) {
  if (j < 1) throw Error(ErrorKind::Domain, "j must be >= 1");
  check_eps(eps);
  Params p;
  p.j = j;
  p.eps = eps;
  p.block_len = std::max(Int(j), ceil_rat(Rat(12 * Int(j)) / eps));
  unsigned k = require_machine(p.block_len, "fallback block length");
  p.block_count = ceil_rat(Rat(Int(1) << (k + 2)) / eps);
  p.delta = eps / Rat(Int(1) << (k + 3));
  return p;
}

Rat ledger_bound(unsigned j, const Int& block_len, const Int& block_count, const Rat& delta) {
  unsigned k = require_machine(block_len, "block length");
  if (k < 1 || block_count < 1) throw Error(ErrorKind::Domain, "block parameters must be >= 1");
  Rat cyclic_and_seam = Rat(3 * Int(j >= 1 ? j - 1 : 0), Int(k));
  Rat rounding = Rat(Int(1) << k, block_count);
  Rat oracle = Rat(Int(1) << (k + 1)) * delta;
  return cyclic_and_seam + rounding + oracle;
}

BlockCounts block_counts(const MeasureOracle& m, unsigned block_len, uint64_t total,
                         const Rat& delta) {
  if (block_len < 1 || total < 1)
    throw Error(ErrorKind::Domain, "block length and count must be >= 1");
  if (delta <= 0) throw Error(ErrorKind::Domain, "delta must be positive");
  return counts_from_queries(query_blocks(m, block_len, delta), total);
}

Word assemble_blocks(const BlockCounts& bc) {
  std::vector<bool> bits;
  bits.reserve(size_t(bc.block_len) * bc.total);
  for (uint64_t i = 0; i < bc.copies.size(); ++i) {
    if (bc.copies[i] == 0) continue;
    Pattern tau = pattern_of_index(bc.block_len, i);
    for (uint64_t r = 0; r < bc.copies[i]; ++r)
      bits.insert(bits.end(), tau.bits().begin(), tau.bits().end());
  }
  return Word(std::move(bits));
}

VerifyReport verify(const Word& a, const MeasureOracle& m, unsigned j, const Rat& eps,
                    const Rat& delta, unsigned workers) {
  if (delta <= 0 || delta >= eps) throw Error(ErrorKind::Domain, "need 0 < delta < eps");
  VerifyReport report;
  report.eps = eps;
  report.delta = delta;
  report.max_residual = 0;

  // One cyclic scan at window length j; shorter patterns aggregate from it.
  const std::vector<uint64_t> window = cyclic_window_counts(a, j, workers);
  const Int n(a.size());
  for (unsigned len = 0; len <= j; ++len) {
    const unsigned shift = j - len;
    for (uint64_t idx = 0; idx < (uint64_t(1) << len); ++idx) {
      uint64_t count = 0;
      for (uint64_t w = idx << shift; w < ((idx + 1) << shift); ++w) count += window[w];
      VerifyRow row;
      row.sigma = pattern_of_index(len, idx);
      row.word_density = Rat(Int(count), n);
      row.oracle_value = m.query(row.sigma, delta);
      row.residual = rat_abs(row.oracle_value - row.word_density);
      if (row.residual >= report.max_residual) {
        report.max_residual = row.residual;
        report.worst = row.sigma;
      }
      report.rows.push_back(std::move(row));
    }
  }
  report.passed = report.max_residual + delta < eps;
  report.certified_error = m.exact() ? report.max_residual : report.max_residual + delta;
  return report;
}

BuildResult build(const MeasureOracle& m, unsigned j, const Rat& eps, uint64_t budget,
                  unsigned workers) {
  if (j < 1) throw Error(ErrorKind::Domain, "j must be >= 1");
  check_eps(eps);
  if (budget < 1) throw Error(ErrorKind::Domain, "budget must be >= 1");

  const Params fb = fallback_params(j, eps);
  BuildResult result;
  result.fallback_word_len = fb.block_len * fb.block_count;
  result.best_error = 2;  // anything measured is below this

  for (unsigned k = 1;; ++k) {
    if (Int(k) > fb.block_len) break;            // no gain beyond the guaranteed regime
    if (uint64_t(k) * 2 > budget) break;         // not even l = 2 fits
    if (k >= 63 || (uint64_t(1) << k) > budget) break;
    const Rat delta = eps / Rat(Int(1) << (k + 3));
    const BlockQueries queries = query_blocks(m, k, delta);

    Int cap = std::min(Int(budget / k), ceil_rat(Rat(Int(1) << (k + 2)) / eps));
    uint64_t lcap = cap < 2 ? 0 : cap.convert_to<uint64_t>();
    for (uint64_t l = 2; l <= lcap;) {
      BlockCounts bc = counts_from_queries(queries, l);
      Word candidate = assemble_blocks(bc);
      VerifyReport rep = verify(candidate, m, j, eps, delta, workers);
      ++result.attempts;
      result.best_error = std::min(result.best_error, rep.certified_error);
      if (rep.passed) {
        ApproxResult approx{std::move(candidate),
                            Params{j, eps, Int(k), Int(l), delta},
                            rep.certified_error,
                            ledger_bound(j, Int(k), Int(l), delta),
                            std::move(rep)};
        result.ok = true;
        result.approx = std::move(approx);
        return result;
      }
      if (l > lcap / 2) break;
      l *= 2;
    }
  }
  return result;
}

Int pad_min_length(const ApproxResult& half, unsigned j, const Rat& eps) {
  (void)j;
  return Int(half.word.size()) * ceil_rat(Rat(4) / eps);
}

ApproxResult pad_to(const ApproxResult& half, uint64_t n, const MeasureOracle& m, const Rat& eps,
                    unsigned workers) {
  check_eps(eps);
  if (half.params.eps * 2 > eps)
    throw Error(ErrorKind::Domain, "input must be built at tolerance eps/2 or better");
  if (n < half.word.size())
    throw Error(ErrorKind::LengthTooSmall,
                "target length " + std::to_string(n) + " is below one copy (" +
                    std::to_string(half.word.size()) + ")");
  Word padded = repeat_truncate(half.word, n);
  VerifyReport rep = verify(padded, m, half.params.j, eps, half.params.delta, workers);
  if (!rep.passed) {
    const bool guaranteed = Int(n) >= pad_min_length(half, half.params.j, eps);
    throw Error(ErrorKind::VerifyFailure,
                guaranteed ? "internal error: padding failed re-verification above the guaranteed length"
                           : "padded word failed re-verification; pick n >= " +
                                 pad_min_length(half, half.params.j, eps).str());
  }
  Params params = half.params;
  params.eps = eps;
  Rat bound = half.certified_error + Rat(Int(half.word.size() + half.params.j), Int(n));
  return ApproxResult{std::move(padded), params, rep.certified_error, bound, std::move(rep)};
}

ApproxProvider build_provider(const MeasureOracle& m, uint64_t budget, unsigned workers) {
  return [m, budget, workers](unsigned j, const Rat& eps) {
    BuildResult r = build(m, j, eps, budget, workers);
    if (!r.ok)
      throw Error(ErrorKind::BudgetExceeded,
                  "no (j,eps)-good word within budget " + std::to_string(budget) +
                      "; best certified error " + rat_str(r.best_error));
    return r.approx->word;
  };
}

Rat measure_from_approx(const ApproxProvider& provider, const Pattern& sigma, const Rat& eps) {
  check_eps(eps);
  const unsigned j = std::max<size_t>(1, sigma.size());
  return density(provider(j, eps), sigma);
}

}  // namespace shiftword
