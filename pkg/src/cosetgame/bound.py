"""Closed-form winning-probability bound and its combinatorial pieces.

All arithmetic is exact rational; floats only appear at display time.
"""
from __future__ import annotations

from fractions import Fraction

from .f2 import gaussian_binomial

Rational = Fraction


def upper_bound(m: int) -> Fraction:
    """Best achievable joint success rate over uniform half-dim subspaces."""
    if m < 0:
        raise ValueError("m must be >= 0")
    total = sum(
        Fraction(2 ** (k * k) * gaussian_binomial(m, k) ** 2, 2 ** k)
        for k in range(m + 1)
    )
    return total / gaussian_binomial(2 * m, m)


def count_by_intersection(m: int, k: int) -> int:
    """Number of W in G(2m,m) meeting the last-m-coordinates span in dim k."""
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got ({m}, {k})")
    return 2 ** ((m - k) ** 2) * gaussian_binomial(m, m - k) ** 2


def bound_summand(m: int, k: int) -> Fraction:
    """Normalized counting weight 2^(k^2) C(m,k)^2 / C(2m,m).

    These weights sum to 1, grow by a factor >= 9/2 in k up to k = m-1, and
    weighting them by (1/2)^k recovers upper_bound(m).
    """
    return Fraction(
        2 ** (k * k) * gaussian_binomial(m, k) ** 2,
        gaussian_binomial(2 * m, m),
    )


def rate_envelope(m: int) -> tuple[Fraction, Fraction]:
    """Exact interval [2^-m, (11/2) 2^-m] that contains upper_bound(m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return Fraction(1, 2 ** m), Fraction(11, 2 ** (m + 1))
