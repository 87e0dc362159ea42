"""Smoke tests over the python bindings."""

from fractions import Fraction

import pytest

import shiftword as sw


def test_density_and_positions():
    assert sw.density("0110", "11") == "1/4"
    assert sw.occurrence_positions("0110", "0") == [0, 3]
    assert sw.prefix_frequency("0101", "01", 2) == "1/2"


def test_oracle_queries():
    b = sw.Oracle("(bernoulli 1/3)")
    assert b.exact
    assert sw.to_fraction(b.query("00")) == Fraction(4, 9)
    markov = sw.Oracle("(markov 1/3 2/3)")
    assert markov.query("01") == "1/6"


def test_parse_error():
    with pytest.raises(sw.Error):
        sw.Oracle("(bernoulli")


def test_invariance_audit():
    report = sw.invariance_audit("(markov 1/3 2/3)", depth=4)
    assert report["passed"]
    assert report["max_residual"] == "0"


def test_approx_exactness():
    out = sw.approx("(bernoulli 1/2)", j=2, eps="1/8")
    assert out["ok"]
    assert out["result"]["word"] == "0011"
    assert out["result"]["certified_error"] == "0"


def test_approx_budget():
    out = sw.approx("(bernoulli 1/2)", j=2, eps="1/8", budget=2)
    assert not out["ok"]


def test_verify():
    report = sw.verify("0011", "(bernoulli 1/2)", j=2, eps="1/8")
    assert report["passed"]
    assert report["max_residual"] == "0"


def test_generic_bits():
    assert sw.generic_bits("(bernoulli 1)", 5) == "11111"


def test_check_generic():
    report = sw.check_generic("(mixture (1/2 (bernoulli 0)) (1/2 (bernoulli 1)))", 2, "1/4")
    assert report["passed"]
    assert int(report["m_actual"]) <= int(report["m_universal"])


def test_measure_from_approx():
    value = sw.to_fraction(sw.measure_from_approx("(bernoulli 1/3)", "1", "1/8"))
    assert abs(value - Fraction(1, 3)) < Fraction(1, 8)


def test_extract():
    words = ["0101010101", "0000000000"] * 3
    kept = sw.extract_subsequence(words, "1/10", max_j=2)
    assert kept in ([0, 2, 4], [1, 3, 5])


def test_build_zd():
    out = sw.build_zd("(product-bernoulli 2 1/2)", d=2, j=1, eps="1/8", budget=20000)
    assert out["ok"]
    assert out["eps_met"]
    assert Fraction(out["measured"]) < Fraction(1, 8)


def test_fallback_params():
    p = sw.fallback_params(1, "1")
    assert p["k"] == "12"
    assert p["l"] == str(2**14)
