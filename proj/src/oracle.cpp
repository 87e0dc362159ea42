#include "shiftword/oracle.hpp"

#include <memory>

#include "shiftword/error.hpp"

namespace shiftword {

Rat MeasureOracle::query(const Pattern& sigma, const Rat& delta) const {
  if (delta <= 0) throw Error(ErrorKind::Domain, "query precision must be positive");
  return fn_(sigma, delta);
}

MeasureOracle bernoulli(const Rat& p) {
  if (p < 0 || p > 1) throw Error(ErrorKind::Domain, "bernoulli parameter must lie in [0,1]");
  auto fn = [p](const Pattern& sigma, const Rat&) {
    Rat v(1);
    for (size_t t = 0; t < sigma.size(); ++t) v *= sigma.bit(t) ? p : Rat(1) - p;
    return v;
  };
  return MeasureOracle("(bernoulli " + rat_str(p) + ")", true, fn);
}

MeasureOracle markov(const Rat& p01, const Rat& p11, std::optional<Rat> pi1) {
  for (const Rat& v : {p01, p11})
    if (v < 0 || v > 1) throw Error(ErrorKind::Domain, "markov parameters must lie in [0,1]");
  const Rat p10 = Rat(1) - p11;
  Rat pi;
  if (pi1) {
    pi = *pi1;
    if (pi < 0 || pi > 1) throw Error(ErrorKind::Domain, "pi1 must lie in [0,1]");
    // stationarity: pi1 = pi0*p01 + pi1*p11, exactly
    if (pi != (Rat(1) - pi) * p01 + pi * p11)
      throw Error(ErrorKind::NonStationary, "supplied pi1 is not stationary");
  } else {
    // Reducible chains (p01 = 0 or p11 = 1) are rejected outright; supply pi1
    // explicitly to pin a stationary vector for them.
    if (p01 == 0 || p11 == 1)
      throw Error(ErrorKind::NoUniqueStationary, "chain is reducible; supply pi1 explicitly");
    pi = p01 / (p01 + p10);
  }
  // row-stochastic transitions over states {0,1}
  const Rat trans[2][2] = {{Rat(1) - p01, p01}, {p10, p11}};
  const Rat start[2] = {Rat(1) - pi, pi};
  auto fn = [trans = std::vector<Rat>{trans[0][0], trans[0][1], trans[1][0], trans[1][1]},
             start = std::vector<Rat>{start[0], start[1]}](const Pattern& sigma, const Rat&) {
    if (sigma.empty()) return Rat(1);
    Rat v = start[sigma.bit(0) ? 1 : 0];
    for (size_t t = 0; t + 1 < sigma.size(); ++t)
      v *= trans[2 * (sigma.bit(t) ? 1 : 0) + (sigma.bit(t + 1) ? 1 : 0)];
    return v;
  };
  std::string name = "(markov " + rat_str(p01) + " " + rat_str(p11) +
                     (pi1 ? " " + rat_str(*pi1) : std::string()) + ")";
  return MeasureOracle(std::move(name), true, fn);
}

MeasureOracle mixture(const std::vector<std::pair<Rat, MeasureOracle>>& components) {
  if (components.empty()) throw Error(ErrorKind::WeightError, "mixture needs at least one component");
  Rat total(0);
  bool exact = true;
  for (const auto& [w, m] : components) {
    if (w < 0) throw Error(ErrorKind::WeightError, "mixture weights must be non-negative");
    total += w;
    exact = exact && m.exact();
  }
  if (total != 1) throw Error(ErrorKind::WeightError, "mixture weights must sum to 1 exactly");
  auto comps = std::make_shared<const std::vector<std::pair<Rat, MeasureOracle>>>(components);
  // Each component is queried at delta itself; since the weights sum to 1 the
  // mixed answer stays within delta.
  auto fn = [comps](const Pattern& sigma, const Rat& delta) {
    Rat v(0);
    for (const auto& [w, m] : *comps) v += w * m.query(sigma, delta);
    return v;
  };
  std::string name = "(mixture";
  for (const auto& [w, m] : components) name += " (" + rat_str(w) + " " + m.name() + ")";
  name += ")";
  return MeasureOracle(std::move(name), exact, fn);
}

MeasureOracle empirical(const Word& a) {
  auto word = std::make_shared<const Word>(a);
  auto fn = [word](const Pattern& sigma, const Rat&) { return density(*word, sigma); };
  return MeasureOracle("(empirical " + a.str() + ")", true, fn);
}

void FiniteMPS::validate() const {
  const size_t n = perm.size();
  if (n == 0) throw Error(ErrorKind::Domain, "system must have at least one state");
  if (weights.size() != n || members.size() != n)
    throw Error(ErrorKind::Domain, "perm/weights/set sizes disagree");
  std::vector<bool> hit(n, false);
  for (size_t image : perm) {
    if (image >= n || hit[image]) throw Error(ErrorKind::Domain, "perm is not a permutation");
    hit[image] = true;
  }
  Rat total(0);
  for (const Rat& w : weights) {
    if (w < 0) throw Error(ErrorKind::Domain, "weights must be non-negative");
    total += w;
  }
  if (total != 1) throw Error(ErrorKind::Domain, "weights must sum to 1 exactly");
}

MeasureOracle pushforward(const FiniteMPS& sys) {
  sys.validate();
  auto s = std::make_shared<const FiniteMPS>(sys);
  // mu([sigma]) = nu of the states whose orbit membership word starts with sigma.
  auto fn = [s](const Pattern& sigma, const Rat&) {
    Rat v(0);
    for (size_t x = 0; x < s->size(); ++x) {
      size_t y = x;
      bool ok = true;
      for (size_t t = 0; t < sigma.size(); ++t) {
        if (s->members[y] != sigma.bit(t)) {
          ok = false;
          break;
        }
        y = s->perm[y];
      }
      if (ok) v += s->weights[x];
    }
    return v;
  };
  std::string name = "(pushforward " + std::to_string(sys.size()) + ")";
  return MeasureOracle(std::move(name), true, fn);
}

AuditReport invariance_audit(const MeasureOracle& m, unsigned depth, const Rat& delta) {
  if (delta <= 0) throw Error(ErrorKind::Domain, "delta must be positive");
  AuditReport report;
  report.tolerance = 3 * delta;
  report.max_residual = 0;
  for (const Pattern& sigma : patterns_up_to(depth)) {
    Rat q = m.query(sigma, delta);
    auto extended = [&](bool front, bool bit) {
      std::vector<bool> bits;
      bits.reserve(sigma.size() + 1);
      if (front) bits.push_back(bit);
      bits.insert(bits.end(), sigma.bits().begin(), sigma.bits().end());
      if (!front) bits.push_back(bit);
      return m.query(Pattern(std::move(bits)), delta);
    };
    AuditRow row{sigma, rat_abs(extended(false, false) + extended(false, true) - q),
                 rat_abs(extended(true, false) + extended(true, true) - q)};
    report.max_residual = std::max({report.max_residual, row.extend_residual, row.shift_residual});
    if (row.extend_residual > report.tolerance || row.shift_residual > report.tolerance)
      report.violations.push_back(sigma);
    report.rows.push_back(std::move(row));
  }
  report.passed = report.violations.empty();
  return report;
}

}  // namespace shiftword
