#ifndef SHIFTWORD_AMENABLE_HPP
#define SHIFTWORD_AMENABLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shiftword/rat.hpp"

namespace shiftword {

// Z^d specialization: Folner boxes F_n = {0,...,n-1}^d.
using Coord = std::vector<int64_t>;

// Pattern on a finite subset of Z^d. Cells are kept sorted row-major so that
// equal patterns have equal representations.
class LatticePattern {
 public:
  LatticePattern() = default;
  LatticePattern(std::vector<std::pair<Coord, bool>> cells);

  const std::vector<std::pair<Coord, bool>>& cells() const { return cells_; }
  size_t support_size() const { return cells_.size(); }
  size_t ones() const;
  std::string str() const;  // e.g. "{(0,1):1,(1,0):0}"; "{}" for empty support

  LatticePattern translated(const Coord& shift) const;

 private:
  std::vector<std::pair<Coord, bool>> cells_;
};

// All 2^{j^d} patterns with support exactly F_j, cells in row-major order,
// bit strings in lexicographic order (index read MSB-first).
LatticePattern lattice_pattern_of_index(unsigned d, unsigned j, uint64_t index);
size_t box_cell_count(unsigned d, unsigned side);

// Disjoint union of L copies of the box F_k with a bit assignment; F_j acts
// partially within each box (gamma + p must stay inside F_k).
struct LatticeModel {
  unsigned dim = 1;   // d
  unsigned side = 1;  // k
  std::vector<std::vector<bool>> boxes;  // each of size side^dim, row-major

  size_t copies() const { return boxes.size(); }
  size_t cells_per_box() const { return box_cell_count(dim, side); }
  size_t total_cells() const { return copies() * cells_per_box(); }
};

// Occurrence density of sigma over all positions of the model. A cell moved
// outside the box is undefined, and an undefined cell satisfies sigma(a)=0.
Rat lattice_density(const LatticeModel& model, const LatticePattern& sigma);

// Z^d-invariant measure oracle; same contract as MeasureOracle.
class LatticeOracle {
 public:
  using QueryFn = std::function<Rat(const LatticePattern&, const Rat&)>;

  LatticeOracle(std::string name, unsigned dim, bool exact, QueryFn fn)
      : name_(std::move(name)), dim_(dim), exact_(exact), fn_(std::move(fn)) {}

  Rat query(const LatticePattern& sigma, const Rat& delta) const;
  unsigned dim() const { return dim_; }
  bool exact() const { return exact_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  unsigned dim_;
  bool exact_;
  QueryFn fn_;
};

LatticeOracle product_bernoulli_zd(unsigned d, const Rat& p);

// Cyclic densities on a d-dimensional torus of the given side; config is
// row-major over {0,...,side-1}^d.
LatticeOracle torus_empirical_zd(unsigned d, unsigned side, const std::vector<bool>& config);

// Least k >= j with j^d * ((j+k-1)^d - k^d) / k^d <= eps/4; for boxes,
// F_j F_k is the box of side j+k-1.
Int choose_k_zd(unsigned d, unsigned j, const Rat& eps);

// The boundary term above at a concrete k.
Rat lattice_boundary_term(unsigned d, unsigned j, unsigned k);

struct ZdVerifyRow {
  LatticePattern sigma;
  Rat oracle_value;
  Rat model_density;
  Rat residual;
};

struct ZdReport {
  unsigned dim = 1;
  unsigned j = 1;
  Rat eps;
  unsigned block_side = 0;  // k used
  uint64_t copies = 0;      // L used
  Rat delta;
  Rat measured;          // max residual over support-F_j patterns
  Rat certified;         // measured, plus delta when the oracle is inexact
  Rat boundary_term;
  Rat rounding_term;     // 2^{k^d} / L
  Rat oracle_term;       // 2^{k^d + 1} * delta
  Rat ledger_bound;      // sum of the three
  Rat dom_fraction;      // |dom(F_j)| / |X| = ((k-j+1)/k)^d
  bool eps_met = false;
  std::vector<ZdVerifyRow> rows;
};

struct ZdBuildResult {
  bool ok = false;  // certified error < eps
  std::optional<LatticeModel> model;  // also engaged on budget exhaustion when a
                                      // ledger-certified model exists
  std::optional<ZdReport> report;
};

// Adaptive analogue of the 1-D build: block side ascending from j toward the
// choose_k_zd target, copy count doubling, prefix-rounded block counts over
// the 2^{k^d} patterns on F_k. Returns as soon as the certified error beats
// eps; otherwise keeps the best model that at least meets its own ledger
// bound (the theorem's content at desk scale) and reports eps_met = false.
// `budget` caps both the total cell count L*k^d and the 2^{k^d} enumeration.
ZdBuildResult build_zd(const LatticeOracle& m, unsigned d, unsigned j, const Rat& eps,
                       uint64_t budget, unsigned workers = 1);

struct LatticeAuditRow {
  LatticePattern sigma;
  Rat extend_residual;     // worst |q(sigma+a0) + q(sigma+a1) - q(sigma)| over free cells a
  Rat translate_residual;  // worst |q(sigma) - q(sigma+e_i)| over unit shifts that fit
};

struct LatticeAuditReport {
  bool passed = false;
  Rat extend_tolerance;     // 3 * delta
  Rat translate_tolerance;  // 2 * delta
  Rat max_residual;
  std::vector<LatticeAuditRow> rows;
  std::vector<LatticePattern> violations;
};

// Additivity over single-cell extensions and invariance under unit
// translations, for every partial pattern with support inside F_depth.
LatticeAuditReport lattice_invariance_audit(const LatticeOracle& m, unsigned d, unsigned depth,
                                            const Rat& delta);

// Model file: header "d k L", then L blocks of k^{d-1} lines of k characters.
void write_lattice_model_file(const std::string& path, const LatticeModel& model);
LatticeModel read_lattice_model_file(const std::string& path);

}  // namespace shiftword

#endif
