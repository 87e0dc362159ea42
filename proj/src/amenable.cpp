#include "shiftword/amenable.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "shiftword/error.hpp"

namespace shiftword {

namespace {

void check_dim(unsigned d) {
  if (d < 1 || d > 8) throw Error(ErrorKind::Domain, "dimension must lie in [1,8]");
}

void check_eps(const Rat& eps) {
  if (eps <= 0 || eps > 1) throw Error(ErrorKind::Domain, "eps must lie in (0,1]");
}

Int int_pow(const Int& base, unsigned e) {
  Int v(1);
  for (unsigned i = 0; i < e; ++i) v *= base;
  return v;
}

Coord coord_of_cell(unsigned d, unsigned side, size_t cell) {
  Coord c(d);
  for (unsigned axis = d; axis-- > 0;) {
    c[axis] = int64_t(cell % side);
    cell /= side;
  }
  return c;
}

std::string coord_str(const Coord& c) {
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

}  // namespace

LatticePattern::LatticePattern(std::vector<std::pair<Coord, bool>> cells)
    : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i + 1 < cells_.size(); ++i) {
    if (cells_[i].first.size() != cells_[i + 1].first.size())
      throw Error(ErrorKind::Domain, "pattern cells have mixed dimensions");
    if (cells_[i].first == cells_[i + 1].first)
      throw Error(ErrorKind::Domain, "pattern assigns a cell twice");
  }
}

size_t LatticePattern::ones() const {
  size_t count = 0;
  for (const auto& [c, bit] : cells_)
    if (bit) ++count;
  return count;
}

std::string LatticePattern::str() const {
  std::string s = "{";
  for (size_t i = 0; i < cells_.size(); ++i) {
    if (i) s += ",";
    s += coord_str(cells_[i].first) + ":" + (cells_[i].second ? "1" : "0");
  }
  return s + "}";
}

LatticePattern LatticePattern::translated(const Coord& shift) const {
  std::vector<std::pair<Coord, bool>> cells = cells_;
  for (auto& [c, bit] : cells) {
    if (c.size() != shift.size()) throw Error(ErrorKind::Domain, "shift dimension mismatch");
    for (size_t i = 0; i < c.size(); ++i) c[i] += shift[i];
  }
  return LatticePattern(std::move(cells));
}

size_t box_cell_count(unsigned d, unsigned side) {
  check_dim(d);
  if (side < 1) throw Error(ErrorKind::Domain, "box side must be >= 1");
  Int cells = int_pow(Int(side), d);
  if (cells > 1000000000) throw Error(ErrorKind::Domain, "box too large");
  return cells.convert_to<size_t>();
}

LatticePattern lattice_pattern_of_index(unsigned d, unsigned j, uint64_t index) {
  const size_t cells = box_cell_count(d, j);
  if (cells >= 63) throw Error(ErrorKind::Domain, "pattern enumeration too large");
  std::vector<std::pair<Coord, bool>> assignment;
  assignment.reserve(cells);
  for (size_t t = 0; t < cells; ++t)
    assignment.emplace_back(coord_of_cell(d, j, t), (index >> (cells - 1 - t)) & 1);
  return LatticePattern(std::move(assignment));
}

Rat lattice_density(const LatticeModel& model, const LatticePattern& sigma) {
  const unsigned d = model.dim, k = model.side;
  for (const auto& [c, bit] : sigma.cells()) {
    if (c.size() != d) throw Error(ErrorKind::Domain, "pattern dimension mismatch");
    for (int64_t v : c)
      if (v < 0 || v >= int64_t(k))
        throw Error(ErrorKind::SupportTooLarge, "pattern support not inside the box");
  }
  const size_t per_box = model.cells_per_box();
  size_t count = 0;
  for (const auto& box : model.boxes) {
    for (size_t p = 0; p < per_box; ++p) {
      const Coord pos = coord_of_cell(d, k, p);
      bool ok = true;
      for (const auto& [c, bit] : sigma.cells()) {
        bool defined = true;
        size_t idx = 0;
        for (unsigned axis = 0; axis < d; ++axis) {
          const int64_t v = pos[axis] + c[axis];
          if (v < 0 || v >= int64_t(k)) {
            defined = false;
            break;
          }
          idx = idx * k + size_t(v);
        }
        // an undefined move satisfies sigma(a) = 0 only
        const bool satisfied = defined ? box[idx] == bit : !bit;
        if (!satisfied) {
          ok = false;
          break;
        }
      }
      if (ok) ++count;
    }
  }
  return Rat(Int(count), Int(model.total_cells()));
}

Rat LatticeOracle::query(const LatticePattern& sigma, const Rat& delta) const {
  if (delta <= 0) throw Error(ErrorKind::Domain, "query precision must be positive");
  return fn_(sigma, delta);
}

LatticeOracle product_bernoulli_zd(unsigned d, const Rat& p) {
  check_dim(d);
  if (p < 0 || p > 1) throw Error(ErrorKind::Domain, "parameter must lie in [0,1]");
  auto fn = [p](const LatticePattern& sigma, const Rat&) {
    Rat v(1);
    for (const auto& [c, bit] : sigma.cells()) v *= bit ? p : Rat(1) - p;
    return v;
  };
  return LatticeOracle("(product-bernoulli " + std::to_string(d) + " " + rat_str(p) + ")", d, true,
                       fn);
}

LatticeOracle torus_empirical_zd(unsigned d, unsigned side, const std::vector<bool>& config) {
  const size_t cells = box_cell_count(d, side);
  if (config.size() != cells)
    throw Error(ErrorKind::Domain, "torus config must have side^d entries");
  auto state = std::make_shared<const std::vector<bool>>(config);
  auto fn = [state, d, side](const LatticePattern& sigma, const Rat&) {
    const size_t total = box_cell_count(d, side);
    size_t count = 0;
    for (size_t t = 0; t < total; ++t) {
      const Coord base = coord_of_cell(d, side, t);
      bool ok = true;
      for (const auto& [c, bit] : sigma.cells()) {
        if (c.size() != d) throw Error(ErrorKind::Domain, "pattern dimension mismatch");
        size_t idx = 0;
        for (unsigned axis = 0; axis < d; ++axis) {
          int64_t v = (base[axis] + c[axis]) % int64_t(side);
          if (v < 0) v += side;
          idx = idx * side + size_t(v);
        }
        if ((*state)[idx] != bit) {
          ok = false;
          break;
        }
      }
      if (ok) ++count;
    }
    return Rat(Int(count), Int(total));
  };
  std::string bits;
  for (bool b : config) bits.push_back(b ? '1' : '0');
  return LatticeOracle("(torus " + std::to_string(d) + " " + std::to_string(side) + " " + bits + ")",
                       d, true, fn);
}

Rat lattice_boundary_term(unsigned d, unsigned j, unsigned k) {
  if (j < 1 || k < 1) throw Error(ErrorKind::Domain, "j and k must be >= 1");
  const Int kd = int_pow(Int(k), d);
  const Int grown = int_pow(Int(j) + Int(k) - 1, d);
  return Rat(int_pow(Int(j), d) * (grown - kd), kd);
}

Int choose_k_zd(unsigned d, unsigned j, const Rat& eps) {
  check_dim(d);
  if (j < 1) throw Error(ErrorKind::Domain, "j must be >= 1");
  check_eps(eps);
  const Rat target = eps / 4;
  for (unsigned k = j;; ++k) {
    if (lattice_boundary_term(d, j, k) <= target) return Int(k);
    if (k > 100000000) throw Error(ErrorKind::Domain, "boundary target unreachable");
  }
}

namespace {

std::vector<bool> box_bits_of_index(size_t cells, uint64_t index) {
  std::vector<bool> bits(cells);
  for (size_t t = 0; t < cells; ++t) bits[t] = (index >> (cells - 1 - t)) & 1;
  return bits;
}

struct ZdScan {
  Rat measured;
  std::vector<ZdVerifyRow> rows;
};

ZdScan scan_model(const LatticeOracle& m, const LatticeModel& model, unsigned d, unsigned j,
                  const Rat& delta, unsigned workers) {
  const size_t cells = box_cell_count(d, j);
  const uint64_t count = uint64_t(1) << cells;
  std::vector<ZdVerifyRow> rows(count);
  auto scan = [&](uint64_t begin, uint64_t end) {
    for (uint64_t i = begin; i < end; ++i) {
      ZdVerifyRow& row = rows[i];
      row.sigma = lattice_pattern_of_index(d, j, i);
      row.oracle_value = m.query(row.sigma, delta);
      row.model_density = lattice_density(model, row.sigma);
      row.residual = rat_abs(row.oracle_value - row.model_density);
    }
  };
  if (workers <= 1 || count < 8) {
    scan(0, count);
  } else {
    const unsigned chunks = unsigned(std::min<uint64_t>(workers, count));
    std::vector<std::thread> threads;
    for (unsigned c = 0; c < chunks; ++c)
      threads.emplace_back(scan, count * c / chunks, count * (c + 1) / chunks);
    for (auto& t : threads) t.join();
  }
  ZdScan out{Rat(0), std::move(rows)};
  for (const auto& row : out.rows) out.measured = std::max(out.measured, row.residual);
  return out;
}

}  // namespace

ZdBuildResult build_zd(const LatticeOracle& m, unsigned d, unsigned j, const Rat& eps,
                       uint64_t budget, unsigned workers) {
  check_dim(d);
  if (m.dim() != d) throw Error(ErrorKind::Domain, "oracle dimension mismatch");
  if (j < 1) throw Error(ErrorKind::Domain, "j must be >= 1");
  check_eps(eps);
  const Int k_target = choose_k_zd(d, j, eps);

  ZdBuildResult result;
  std::optional<Rat> best_certified;

  for (unsigned k = j; Int(k) <= k_target; ++k) {
    const size_t cells = box_cell_count(d, k);
    if (cells >= 62 || (uint64_t(1) << cells) > budget) break;  // enumeration infeasible
    if (2 * cells > budget) break;                              // not even L = 2 fits
    const uint64_t block_count = uint64_t(1) << cells;
    const Rat delta = eps / Rat(Int(1) << unsigned(cells + 3));

    // clamped block queries, row-major pattern order
    std::vector<Rat> qs(block_count);
    Rat total(0);
    for (uint64_t i = 0; i < block_count; ++i) {
      Rat v = m.query(lattice_pattern_of_index(d, k, i), delta);
      if (v < 0) v = 0;
      if (v > 1) v = 1;
      qs[i] = v;
      total += v;
    }
    if (total == 0) throw Error(ErrorKind::DegenerateOracle, "all block queries returned mass 0");

    const Rat boundary = lattice_boundary_term(d, j, k);
    const Rat oracle_term = Rat(Int(1) << unsigned(cells + 1)) * delta;
    const uint64_t copies_cap = budget / cells;

    for (uint64_t copies = 2; copies <= copies_cap;) {
      // prefix rounding, same construction as the 1-D block counts
      LatticeModel model;
      model.dim = d;
      model.side = k;
      Rat prefix(0);
      Int prev(0);
      for (uint64_t i = 0; i < block_count; ++i) {
        prefix += qs[i];
        Int b = round_half_up(Rat(Int(copies)) * prefix / total);
        for (Int r = prev; r < b; ++r) model.boxes.push_back(box_bits_of_index(cells, i));
        prev = b;
      }

      ZdScan scan = scan_model(m, model, d, j, delta, workers);
      const Rat certified = m.exact() ? scan.measured : scan.measured + delta;
      ZdReport report;
      report.dim = d;
      report.j = j;
      report.eps = eps;
      report.block_side = k;
      report.copies = copies;
      report.delta = delta;
      report.measured = scan.measured;
      report.certified = certified;
      report.boundary_term = boundary;
      report.rounding_term = Rat(Int(block_count), Int(copies));
      report.oracle_term = oracle_term;
      report.ledger_bound = boundary + report.rounding_term + oracle_term;
      report.dom_fraction = Rat(int_pow(Int(k - j + 1), d), int_pow(Int(k), d));
      report.eps_met = certified < eps;
      report.rows = std::move(scan.rows);

      if (report.eps_met) {
        result.ok = true;
        result.model = std::move(model);
        result.report = std::move(report);
        return result;
      }
      if (certified <= report.ledger_bound &&
          (!best_certified || certified < *best_certified)) {
        best_certified = certified;
        result.model = std::move(model);
        result.report = std::move(report);
      }
      if (copies > copies_cap / 2) break;
      copies *= 2;
    }
  }
  return result;  // ok = false; model/report hold the best ledger-certified run, if any
}

LatticeAuditReport lattice_invariance_audit(const LatticeOracle& m, unsigned d, unsigned depth,
                                            const Rat& delta) {
  check_dim(d);
  if (delta <= 0) throw Error(ErrorKind::Domain, "delta must be positive");
  const size_t cells = box_cell_count(d, depth);
  if (cells > 16) throw Error(ErrorKind::Domain, "audit depth too large");

  LatticeAuditReport report;
  report.extend_tolerance = 3 * delta;
  report.translate_tolerance = 2 * delta;
  report.max_residual = 0;

  size_t assignments = 1;
  for (size_t i = 0; i < cells; ++i) assignments *= 3;

  for (size_t code = 0; code < assignments; ++code) {
    // ternary digits over row-major cells: 0 unset, 1 -> bit 0, 2 -> bit 1
    std::vector<std::pair<Coord, bool>> assigned;
    std::vector<Coord> free_cells;
    size_t rest = code;
    for (size_t t = 0; t < cells; ++t) {
      const size_t digit = rest % 3;
      rest /= 3;
      Coord c = coord_of_cell(d, depth, t);
      if (digit == 0)
        free_cells.push_back(std::move(c));
      else
        assigned.emplace_back(std::move(c), digit == 2);
    }
    LatticePattern sigma(std::move(assigned));
    const Rat q = m.query(sigma, delta);

    LatticeAuditRow row{sigma, Rat(0), Rat(0)};
    for (const Coord& cell : free_cells) {
      auto with = [&](bool bit) {
        auto cells2 = sigma.cells();
        cells2.emplace_back(cell, bit);
        return m.query(LatticePattern(std::move(cells2)), delta);
      };
      row.extend_residual = std::max(row.extend_residual, rat_abs(with(false) + with(true) - q));
    }
    for (unsigned axis = 0; axis < d; ++axis) {
      Coord shift(d, 0);
      shift[axis] = 1;
      bool fits = true;
      for (const auto& [c, bit] : sigma.cells())
        if (c[axis] + 1 >= int64_t(depth)) fits = false;
      if (!fits) continue;
      row.translate_residual =
          std::max(row.translate_residual, rat_abs(q - m.query(sigma.translated(shift), delta)));
    }

    report.max_residual =
        std::max({report.max_residual, row.extend_residual, row.translate_residual});
    if (row.extend_residual > report.extend_tolerance ||
        row.translate_residual > report.translate_tolerance)
      report.violations.push_back(sigma);
    report.rows.push_back(std::move(row));
  }
  report.passed = report.violations.empty();
  return report;
}

void write_lattice_model_file(const std::string& path, const LatticeModel& model) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot open '" + path + "' for writing");
  out << model.dim << " " << model.side << " " << model.copies() << "\n";
  const size_t per_line = model.side;
  for (const auto& box : model.boxes) {
    for (size_t i = 0; i < box.size(); ++i) {
      out << (box[i] ? '1' : '0');
      if ((i + 1) % per_line == 0) out << "\n";
    }
  }
}

LatticeModel read_lattice_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorKind::Parse, path + ": missing header");
  std::istringstream hs(header);
  unsigned d = 0, k = 0;
  uint64_t copies = 0;
  if (!(hs >> d >> k >> copies)) throw Error(ErrorKind::Parse, path + ": header must be 'd k L'");
  LatticeModel model;
  model.dim = d;
  model.side = k;
  const size_t cells = box_cell_count(d, k);
  const size_t lines_per_box = cells / k;
  for (uint64_t c = 0; c < copies; ++c) {
    std::vector<bool> box;
    box.reserve(cells);
    for (size_t line = 0; line < lines_per_box; ++line) {
      std::string row;
      if (!std::getline(in, row)) throw Error(ErrorKind::Parse, path + ": truncated model");
      if (row.size() != k) throw Error(ErrorKind::Parse, path + ": row width mismatch");
      for (char ch : row) {
        if (ch != '0' && ch != '1') throw Error(ErrorKind::Parse, path + ": invalid character");
        box.push_back(ch == '1');
      }
    }
    model.boxes.push_back(std::move(box));
  }
  return model;
}

}  // namespace shiftword
