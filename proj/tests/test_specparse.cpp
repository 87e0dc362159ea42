#include <doctest.h>

#include <string>

#include "shiftword/error.hpp"
#include "shiftword/specparse.hpp"
#include "oracles.hpp"

using namespace shiftword;

namespace {
const Rat kDelta(1, 1000000);

std::string parse_error_message(const std::string& text) {
  try {
    (void)parse_measure_spec(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    return e.what();
  }
  FAIL("expected a parse error for: ", text);
  return {};
}
}  // namespace

TEST_CASE("grammar round trips to the builtin constructors") {
  CHECK(parse_measure_spec("(bernoulli 1/2)").query(Pattern("01"), kDelta) == Rat(1, 4));
  CHECK(parse_measure_spec("(markov 1/3 2/3)").query(Pattern("01"), kDelta) == Rat(1, 6));
  CHECK(parse_measure_spec("(markov 0 1/2 0)").query(Pattern("0"), kDelta) == Rat(1));
  CHECK(parse_measure_spec("(empirical 0110)").query(Pattern("11"), kDelta) == Rat(1, 4));
  const MeasureOracle mix =
      parse_measure_spec("(mixture (1/2 (bernoulli 0)) (1/2 (bernoulli 1)))");
  CHECK(mix.query(Pattern("01"), kDelta) == Rat(0));
  CHECK(mix.query(Pattern("111"), kDelta) == Rat(1, 2));
  const MeasureOracle push = parse_measure_spec(
      "(pushforward 3 (perm 1 2 0) (weights 1/3 1/3 1/3) (set 1 0 0))");
  CHECK(push.query(Pattern("10"), kDelta) == Rat(1, 3));
}

TEST_CASE("whitespace and newlines are insignificant") {
  const MeasureOracle m = parse_measure_spec("(mixture\n  (1/2 (bernoulli 0))\n  (1/2\n\t(bernoulli 1)))");
  CHECK(m.query(Pattern("0"), kDelta) == Rat(1, 2));
}

TEST_CASE("parse errors carry line and column") {
  CHECK(parse_error_message("(bernoulli 1/2").find("line 1") != std::string::npos);
  const std::string msg = parse_error_message("(mixture\n  (1/2 (bernoulli 0))\n  (oops))");
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(parse_error_message("").find("empty") != std::string::npos);
  CHECK(parse_error_message("(bernoulli 1/2) x").find("trailing") != std::string::npos);
  CHECK(parse_error_message("(bernoulli 0.5)").find("rational") != std::string::npos);
}

TEST_CASE("constructor domain errors surface as parse errors with position") {
  CHECK_THROWS_AS((void)parse_measure_spec("(bernoulli 3/2)"), Error);
  CHECK_THROWS_AS((void)parse_measure_spec("(markov 0 1)"), Error);
  CHECK_THROWS_AS((void)parse_measure_spec("(mixture (1/3 (bernoulli 1)))"), Error);
  CHECK_THROWS_AS((void)parse_measure_spec("(pushforward 2 (perm 0 0) (weights 1/2 1/2) (set 1 0))"),
                  Error);
}

TEST_CASE("lattice grammar") {
  const LatticeOracle pb = parse_lattice_spec("(product-bernoulli 2 1/2)");
  CHECK(pb.dim() == 2);
  CHECK(pb.query(LatticePattern({{{0, 0}, true}}), kDelta) == Rat(1, 2));
  const LatticeOracle torus = parse_lattice_spec("(torus 2 2 10 01)");
  CHECK(torus.query(LatticePattern({{{0, 0}, true}, {{1, 0}, true}}), kDelta) == Rat(0));
  const LatticeOracle line = parse_lattice_spec("(torus 1 2 01)");
  CHECK(line.query(LatticePattern({{{0}, false}}), kDelta) == Rat(1, 2));
  CHECK_THROWS_AS((void)parse_lattice_spec("(torus 2 2 10)"), Error);
  CHECK_THROWS_AS((void)parse_lattice_spec("(bernoulli 1/2)"), Error);
}
