#ifndef SHIFTWORD_ORACLE_HPP
#define SHIFTWORD_ORACLE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shiftword/rat.hpp"
#include "shiftword/word.hpp"

namespace shiftword {

// Computable representation of a shift-invariant measure: query(sigma, delta)
// returns a rational within delta of mu([sigma]). Built-in oracles are exact
// and ignore delta; the parameter exists so user-supplied approximate oracles
// fit the same interface. Queries must be deterministic and safe to issue
// from multiple threads.
class MeasureOracle {
 public:
  using QueryFn = std::function<Rat(const Pattern&, const Rat&)>;

  MeasureOracle(std::string name, bool exact, QueryFn fn)
      : name_(std::move(name)), exact_(exact), fn_(std::move(fn)) {}

  Rat query(const Pattern& sigma, const Rat& delta) const;
  bool exact() const { return exact_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  bool exact_;
  QueryFn fn_;
};

// Finite measure-preserving system: N states, a permutation, rational weights
// summing to 1 exactly, and a distinguished subset E.
struct FiniteMPS {
  std::vector<size_t> perm;     // perm[x] = image of state x
  std::vector<Rat> weights;     // size N, non-negative, sum 1
  std::vector<bool> members;    // size N, membership in E

  size_t size() const { return perm.size(); }
  void validate() const;
};

// Built-in oracle constructors. All are exact.
MeasureOracle bernoulli(const Rat& p);
MeasureOracle markov(const Rat& p01, const Rat& p11, std::optional<Rat> pi1 = std::nullopt);
MeasureOracle mixture(const std::vector<std::pair<Rat, MeasureOracle>>& components);
MeasureOracle empirical(const Word& a);
MeasureOracle pushforward(const FiniteMPS& sys);

struct AuditRow {
  Pattern sigma;
  Rat extend_residual;  // |q(sigma 0) + q(sigma 1) - q(sigma)|
  Rat shift_residual;   // |q(0 sigma) + q(1 sigma) - q(sigma)|
};

struct AuditReport {
  bool passed = false;
  Rat tolerance;  // 3 * delta
  Rat max_residual;
  std::vector<AuditRow> rows;                 // length-then-lex order
  std::vector<Pattern> violations;
};

// Checks additivity and shift-invariance of the oracle's answers on every
// sigma with |sigma| <= depth, at tolerance 3*delta.
AuditReport invariance_audit(const MeasureOracle& m, unsigned depth, const Rat& delta);

}  // namespace shiftword

#endif
