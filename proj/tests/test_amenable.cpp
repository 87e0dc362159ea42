#include <doctest.h>

#include <cstdio>

#include "shiftword/amenable.hpp"
#include "shiftword/error.hpp"
#include "shiftword/inverse.hpp"
#include "oracles.hpp"

using namespace shiftword;

namespace {
const Rat kDelta(1, 1000000);

LatticeModel one_box(unsigned d, unsigned k, const std::string& bits) {
  LatticeModel m;
  m.dim = d;
  m.side = k;
  std::vector<bool> box;
  for (char c : bits) box.push_back(c == '1');
  m.boxes.push_back(std::move(box));
  return m;
}
}  // namespace

TEST_CASE("lattice density with partial action") {
  // d=1, k=2, assignment 10: only position 0 carries a 1
  CHECK(lattice_density(one_box(1, 2, "10"), LatticePattern({{{0}, true}})) == Rat(1, 2));
  // empty support is vacuous
  CHECK(lattice_density(one_box(1, 2, "10"), LatticePattern()) == Rat(1));
  // d=2, k=2, all ones: positions whose right neighbor stays in the box
  CHECK(lattice_density(one_box(2, 2, "1111"),
                        LatticePattern({{{0, 0}, true}, {{1, 0}, true}})) == Rat(1, 2));
  // an undefined move satisfies only sigma(a)=0
  CHECK(lattice_density(one_box(1, 2, "11"),
                        LatticePattern({{{0}, true}, {{1}, false}})) == Rat(1, 2));
  CHECK_THROWS_AS((void)lattice_density(one_box(1, 2, "10"), LatticePattern({{{2}, true}})),
                  Error);
}

TEST_CASE("product bernoulli oracle") {
  const LatticeOracle m = product_bernoulli_zd(2, Rat(1, 2));
  CHECK(m.query(LatticePattern({{{0, 0}, true}}), kDelta) == Rat(1, 2));
  CHECK(m.query(LatticePattern({{{0, 0}, true}, {{3, 1}, false}}), kDelta) == Rat(1, 4));
  CHECK(product_bernoulli_zd(1, Rat(1, 3)).query(LatticePattern({{{0}, false}}), kDelta) ==
        Rat(2, 3));
  CHECK_THROWS_AS((void)product_bernoulli_zd(1, Rat(-1)), Error);
}

TEST_CASE("torus empirical oracle") {
  CHECK(torus_empirical_zd(1, 2, {false, true}).query(LatticePattern({{{0}, false}}), kDelta) ==
        Rat(1, 2));
  // checkerboard: adjacent cells always differ
  const LatticeOracle checker = torus_empirical_zd(2, 2, {true, false, false, true});
  CHECK(checker.query(LatticePattern({{{0, 0}, true}, {{1, 0}, true}}), kDelta) == Rat(0));
  CHECK(checker.query(LatticePattern(), kDelta) == Rat(1));
  // wraparound with coordinates beyond the side
  CHECK(checker.query(LatticePattern({{{0, 0}, true}, {{2, 2}, true}}), kDelta) == Rat(1, 2));
}

TEST_CASE("choose_k_zd") {
  CHECK(choose_k_zd(2, 1, Rat(1, 8)) == 1);    // j=1 has no boundary term
  CHECK(choose_k_zd(1, 2, Rat(1, 2)) == 16);   // least k with 2/k <= 1/8
  // least k with 4(2k+1)/k^2 <= 1/8
  const Int k22 = choose_k_zd(2, 2, Rat(1, 2));
  const Rat target = Rat(1, 8);
  CHECK(lattice_boundary_term(2, 2, k22.convert_to<unsigned>()) <= target);
  CHECK(lattice_boundary_term(2, 2, k22.convert_to<unsigned>() - 1) > target);
}

TEST_CASE("build_zd meets eps for j=1") {
  const ZdBuildResult r = build_zd(product_bernoulli_zd(2, Rat(1, 2)), 2, 1, Rat(1, 8), 20000);
  REQUIRE(r.ok);
  CHECK(r.report->eps_met);
  CHECK(r.report->measured < Rat(1, 8));
  CHECK(r.report->measured <= r.report->ledger_bound);
}

TEST_CASE("build_zd certifies the ledger bound when eps is out of reach") {
  // the boundary term needs k far beyond any feasible 2^{k^2} enumeration
  const ZdBuildResult r = build_zd(product_bernoulli_zd(2, Rat(1, 2)), 2, 2, Rat(1, 64), 400);
  CHECK_FALSE(r.ok);
  REQUIRE(r.model.has_value());
  REQUIRE(r.report.has_value());
  CHECK_FALSE(r.report->eps_met);
  CHECK(r.report->measured <= r.report->ledger_bound);
  CHECK(r.report->certified <= r.report->ledger_bound);

  // a budget too small for any model leaves nothing to certify
  const ZdBuildResult none = build_zd(product_bernoulli_zd(2, Rat(1, 2)), 2, 2, Rat(1, 64), 4);
  CHECK_FALSE(none.ok);
  CHECK_FALSE(none.model.has_value());
}

TEST_CASE("build_zd block counts sum to L") {
  const ZdBuildResult r = build_zd(torus_empirical_zd(1, 2, {false, true}), 1, 2, Rat(1, 4), 4000);
  REQUIRE(r.model.has_value());
  REQUIRE(r.report.has_value());
  CHECK(r.model->copies() == r.report->copies);
  CHECK(r.report->measured <= r.report->ledger_bound);
}

TEST_CASE("lattice invariance audits") {
  SUBCASE("product measure") {
    const LatticeAuditReport rep = lattice_invariance_audit(product_bernoulli_zd(2, Rat(1, 2)), 2, 2, kDelta);
    CHECK(rep.passed);
    CHECK(rep.max_residual == Rat(0));
  }
  SUBCASE("checkerboard torus") {
    const LatticeAuditReport rep =
        lattice_invariance_audit(torus_empirical_zd(2, 2, {true, false, false, true}), 2, 2, kDelta);
    CHECK(rep.passed);
    CHECK(rep.max_residual == Rat(0));
  }
  SUBCASE("constructed violation") {
    const LatticeOracle broken("broken", 1, true, [](const LatticePattern& sigma, const Rat&) {
      if (sigma.support_size() == 0) return Rat(1);
      return sigma.support_size() == 1 && sigma.ones() == 1 ? Rat(1) : Rat(0);
    });
    const LatticeAuditReport rep = lattice_invariance_audit(broken, 1, 2, kDelta);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(rep.violations.empty());
  }
}

TEST_CASE("model file round trip") {
  const ZdBuildResult r = build_zd(product_bernoulli_zd(2, Rat(1, 2)), 2, 1, Rat(1, 8), 20000);
  REQUIRE(r.model.has_value());
  const std::string path = "zd_model_roundtrip.txt";
  write_lattice_model_file(path, *r.model);
  const LatticeModel back = read_lattice_model_file(path);
  CHECK(back.dim == r.model->dim);
  CHECK(back.side == r.model->side);
  CHECK(back.boxes == r.model->boxes);
  std::remove(path.c_str());
}

TEST_CASE("d=1 cross-check against the cyclic build") {
  // same underlying measure through both routes
  const MeasureOracle cyclic = bernoulli(Rat(1, 3));
  const LatticeOracle lattice = product_bernoulli_zd(1, Rat(1, 3));
  const BuildResult word_route = build(cyclic, 2, Rat(1, 8), 1000000);
  const ZdBuildResult box_route = build_zd(lattice, 1, 2, Rat(1, 8), 100000);
  REQUIRE(word_route.ok);
  REQUIRE(box_route.model.has_value());

  const Rat budget = word_route.approx->certified_error + box_route.report->certified;
  for (uint64_t idx = 0; idx < 4; ++idx) {
    const Pattern sigma = pattern_of_index(2, idx);
    std::vector<std::pair<Coord, bool>> cells;
    for (size_t t = 0; t < 2; ++t) cells.push_back({{int64_t(t)}, sigma.bit(t)});
    const Rat word_side = density(word_route.approx->word, sigma);
    const Rat box_side = lattice_density(*box_route.model, LatticePattern(cells));
    CHECK(rat_abs(word_side - box_side) <= budget);
  }
}
