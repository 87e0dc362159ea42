"""Certified finite approximations of shift-invariant measures on Cantor space.

All rationals cross the boundary as exact "p/q" strings; `to_fraction`
converts them when exact Python arithmetic is wanted.
"""

from fractions import Fraction

from shiftword._core import (
    Error,
    Oracle,
    approx,
    build_zd,
    check_generic,
    density,
    extract_subsequence,
    fallback_params,
    generic_bits,
    invariance_audit,
    m_universal,
    measure_from_approx,
    occurrence_positions,
    prefix_frequency,
    verify,
)

__all__ = [
    "Error",
    "Oracle",
    "approx",
    "build_zd",
    "check_generic",
    "density",
    "extract_subsequence",
    "fallback_params",
    "generic_bits",
    "invariance_audit",
    "m_universal",
    "measure_from_approx",
    "occurrence_positions",
    "prefix_frequency",
    "to_fraction",
    "verify",
]


def to_fraction(rat: str) -> Fraction:
    """Parse an exact "p/q" (or "p") string into a Fraction."""
    return Fraction(rat)
