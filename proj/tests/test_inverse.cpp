#include <doctest.h>

#include "shiftword/error.hpp"
#include "shiftword/inverse.hpp"
#include "oracles.hpp"

using namespace shiftword;

namespace {
const Rat kDelta(1, 1 << 20);
const uint64_t kBudget = 1000000;

MeasureOracle mix01() {
  return mixture({{Rat(1, 2), bernoulli(Rat(0))}, {Rat(1, 2), bernoulli(Rat(1))}});
}
}  // namespace

TEST_CASE("fallback parameters") {
  // plugging into k = max(j, ceil(12j/eps)), l = ceil(2^{k+2}/eps), delta = eps 2^{-(k+3)}
  const Params a = fallback_params(1, Rat(1));
  CHECK(a.block_len == 12);
  CHECK(a.block_count == Int(1) << 14);
  CHECK(a.delta == Rat(Int(1), Int(1) << 15));
  const Params b = fallback_params(1, Rat(1, 2));
  CHECK(b.block_len == 24);
  CHECK(b.block_count == Int(1) << 27);
  CHECK(b.delta == Rat(Int(1), Int(1) << 28));
  CHECK_THROWS_AS((void)fallback_params(3, Rat(0)), Error);
  CHECK_THROWS_AS((void)fallback_params(3, Rat(2)), Error);
}

TEST_CASE("ledger inequality holds at the fallback parameters") {
  for (unsigned j = 1; j <= 3; ++j)
    for (const Rat& eps : {Rat(1), Rat(1, 2), Rat(1, 4), Rat(1, 8)}) {
      const Params p = fallback_params(j, eps);
      CHECK(ledger_bound(j, p.block_len, p.block_count, p.delta) < eps);
    }
}

TEST_CASE("block counts") {
  const Rat delta(1, 1024);
  SUBCASE("bernoulli(1/2), k=1, l=4") {
    // prefix sums (0, 1/2, 1) -> b = (0, 2, 4)
    const BlockCounts bc = block_counts(bernoulli(Rat(1, 2)), 1, 4, delta);
    CHECK(bc.copies == std::vector<uint64_t>{2, 2});
  }
  SUBCASE("bernoulli(1), k=1, l=4") {
    const BlockCounts bc = block_counts(bernoulli(Rat(1)), 1, 4, delta);
    CHECK(bc.copies == std::vector<uint64_t>{0, 4});
  }
  SUBCASE("empirical(01), k=2, l=4") {
    // mass 1/2 on 01 and 10, zero elsewhere
    const BlockCounts bc = block_counts(empirical(Word("01")), 2, 4, delta);
    CHECK(bc.copies == std::vector<uint64_t>{0, 2, 2, 0});
  }
  SUBCASE("sums and monotonicity over builtins") {
    for (const MeasureOracle& m : {bernoulli(Rat(1, 3)), markov(Rat(1, 3), Rat(2, 3)), mix01()}) {
      for (uint64_t l : {2ull, 8ull, 32ull}) {
        const BlockCounts bc = block_counts(m, 3, l, delta);
        uint64_t total = 0;
        for (uint64_t a : bc.copies) total += a;
        CHECK(total == l);
        CHECK(bc.prefix.front() == 0);
        CHECK(bc.prefix.back() == l);
      }
    }
  }
  SUBCASE("degenerate oracle") {
    const MeasureOracle zero("zero", true, [](const Pattern& sigma, const Rat&) {
      return sigma.empty() ? Rat(1) : Rat(0);
    });
    CHECK_THROWS_AS((void)block_counts(zero, 2, 4, delta), Error);
  }
}

TEST_CASE("verify") {
  SUBCASE("exact match for 0011 against bernoulli(1/2)") {
    const VerifyReport rep = verify(Word("0011"), bernoulli(Rat(1, 2)), 2, Rat(1, 8), kDelta);
    CHECK(rep.passed);
    CHECK(rep.max_residual == Rat(0));
    CHECK(rep.certified_error == Rat(0));
    CHECK(rep.rows.size() == 7);  // empty, 2 singles, 4 pairs
  }
  SUBCASE("failure reports the worst pattern") {
    const VerifyReport rep = verify(Word("0000"), bernoulli(Rat(1, 2)), 1, Rat(1, 8), kDelta);
    CHECK_FALSE(rep.passed);
    CHECK(rep.max_residual == Rat(1, 2));
    CHECK(rep.worst.str() == "1");
  }
  SUBCASE("self approximation") {
    const VerifyReport rep = verify(Word("01"), empirical(Word("01")), 2, Rat(1, 100), kDelta);
    CHECK(rep.passed);
    CHECK(rep.max_residual == Rat(0));
  }
  SUBCASE("worker count does not change the report") {
    const VerifyReport one = verify(Word("0110100110010110"), bernoulli(Rat(1, 2)), 3, Rat(1), kDelta, 1);
    const VerifyReport four = verify(Word("0110100110010110"), bernoulli(Rat(1, 2)), 3, Rat(1), kDelta, 4);
    CHECK(one.max_residual == four.max_residual);
    CHECK(one.worst.str() == four.worst.str());
    REQUIRE(one.rows.size() == four.rows.size());
    for (size_t i = 0; i < one.rows.size(); ++i)
      CHECK(one.rows[i].word_density == four.rows[i].word_density);
  }
}

TEST_CASE("build: exactness showcase") {
  const BuildResult r = build(bernoulli(Rat(1, 2)), 2, Rat(1, 8), kBudget);
  REQUIRE(r.ok);
  CHECK(r.approx->word.str() == "0011");
  CHECK(r.approx->params.block_len == 1);
  CHECK(r.approx->params.block_count == 4);
  CHECK(r.approx->certified_error == Rat(0));
}

TEST_CASE("build: mixture yields a split word") {
  const BuildResult r = build(mix01(), 2, Rat(1, 8), kBudget);
  REQUIRE(r.ok);
  const Word& a = r.approx->word;
  CHECK(rat_abs(density(a, Pattern("00")) - Rat(1, 2)) < Rat(1, 8));
  CHECK(rat_abs(density(a, Pattern("11")) - Rat(1, 2)) < Rat(1, 8));
  CHECK(density(a, Pattern("01")) < Rat(1, 8));
}

TEST_CASE("build: budget exhaustion") {
  const BuildResult r = build(bernoulli(Rat(1, 2)), 2, Rat(1, 8), 2);
  CHECK_FALSE(r.ok);
  CHECK(r.best_error > Rat(0));
  CHECK(r.attempts >= 1);
}

TEST_CASE("build is deterministic") {
  const BuildResult a = build(markov(Rat(1, 3), Rat(2, 3)), 3, Rat(1, 8), kBudget);
  const BuildResult b = build(markov(Rat(1, 3), Rat(2, 3)), 3, Rat(1, 8), kBudget);
  REQUIRE(a.ok);
  REQUIRE(b.ok);
  CHECK(a.approx->word == b.approx->word);
  CHECK(a.attempts == b.attempts);
}

TEST_CASE("build soundness and size bound across builtins and tolerances") {
  FiniteMPS cycle;
  cycle.perm = {1, 2, 0};
  cycle.weights = {Rat(1, 3), Rat(1, 3), Rat(1, 3)};
  cycle.members = {true, false, false};
  const std::vector<MeasureOracle> oracles = {
      bernoulli(Rat(1, 2)), bernoulli(Rat(1, 3)), markov(Rat(1, 3), Rat(2, 3)), mix01(),
      empirical(Word("0110")), pushforward(cycle)};
  for (const MeasureOracle& m : oracles)
    for (unsigned j : {1u, 2u, 3u})
      for (const Rat& eps : {Rat(1, 4), Rat(1, 8)}) {
        const BuildResult r = build(m, j, eps, kBudget);
        REQUIRE(r.ok);
        const ApproxResult& res = *r.approx;
        // soundness exactly as stated: max residual + delta < eps
        CHECK(res.report.max_residual + res.params.delta < eps);
        for (const VerifyRow& row : res.report.rows)
          CHECK(row.residual + res.params.delta < eps);
        CHECK(Int(res.word.size()) <= r.fallback_word_len);
      }
}

TEST_CASE("pad_to") {
  SUBCASE("doubling 0011 keeps error zero") {
    const BuildResult r = build(bernoulli(Rat(1, 2)), 2, Rat(1, 16), kBudget);
    REQUIRE(r.ok);
    const ApproxResult padded = pad_to(*r.approx, 8, bernoulli(Rat(1, 2)), Rat(1, 8));
    CHECK(padded.word.str() == "00110011");
    CHECK(padded.certified_error == Rat(0));
  }
  SUBCASE("below one copy") {
    const BuildResult r = build(bernoulli(Rat(1, 2)), 2, Rat(1, 16), kBudget);
    REQUIRE(r.ok);
    CHECK_THROWS_AS((void)pad_to(*r.approx, 3, bernoulli(Rat(1, 2)), Rat(1, 8)), Error);
  }
  SUBCASE("odd target length on a repeated pair") {
    const BuildResult r = build(empirical(Word("01")), 2, Rat(1, 8), kBudget);
    REQUIRE(r.ok);
    // densities of 0101010 stay within 1/3 of the (1/2,1/2) pair measure
    const ApproxResult padded = pad_to(*r.approx, 7, empirical(Word("01")), Rat(1, 3));
    CHECK(padded.word.size() == 7);
    CHECK(padded.report.max_residual <= Rat(1, 7));
  }
  SUBCASE("guaranteed above the padding threshold") {
    const BuildResult r = build(mix01(), 2, Rat(1, 16), kBudget);
    REQUIRE(r.ok);
    const Int m_pad = pad_min_length(*r.approx, 2, Rat(1, 8));
    const uint64_t n = m_pad.convert_to<uint64_t>() + 3;
    const ApproxResult padded = pad_to(*r.approx, n, mix01(), Rat(1, 8));
    CHECK(padded.word.size() == n);
    CHECK(padded.report.passed);
  }
}

TEST_CASE("measure recovery from approximations") {
  const MeasureOracle b13 = bernoulli(Rat(1, 3));
  const ApproxProvider provider = build_provider(b13, kBudget);
  const Rat v = measure_from_approx(provider, Pattern("1"), Rat(1, 8));
  CHECK(rat_abs(v - Rat(1, 3)) < Rat(1, 8));

  const MeasureOracle emp = empirical(Word("0110"));
  const Rat w = measure_from_approx(build_provider(emp, kBudget), Pattern("11"), Rat(1, 16));
  CHECK(rat_abs(w - Rat(1, 4)) < Rat(1, 16));

  CHECK(measure_from_approx(provider, Pattern(""), Rat(1, 8)) == Rat(1));
}
