"""Closed forms, finite sums and generating functions, all in exact arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .series import PowerSeries


@lru_cache(maxsize=None)
def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero unless a >= b >= 0."""
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


def central_binomial_series(order: int) -> PowerSeries:
    """1/sqrt(1 - 4z) = sum C(2k, k) z^k."""
    return PowerSeries([binom(2 * k, k) for k in range(order + 1)], order)


def _poly(coeffs, order: int) -> PowerSeries:
    return PowerSeries(coeffs, order)


# --- three -1s avoiding 2143 and 3412 ----------------------------------------


def thm14_closed(n: int) -> int:
    """Closed form for ASMs of size n with exactly three -1s avoiding {2143, 3412}."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 6:
        return 0
    return sum(2 ** (n - 4 - k) * binom(2 * k, k) for k in range(n - 4)) - (n - 2) * 2 ** (n - 5)


def _row_case_sum(n: int) -> int:
    total = 0
    for i in range(4, n - 2):
        for a in range(1, n - 5):
            for j in range(1, a + 1):
                total += (
                    binom(i - 2, j) * binom(n - i - 1, a + 1 - j) * binom(a - 1, j - 1) * binom(n - a - 6, i - j - 3)
                )
    return total


def thm14_triple_sum(n: int) -> int:
    """Twice the count with all three -1s in one row (row and column cases)."""
    return 2 * _row_case_sum(n)


def thm14_gf(order: int) -> PowerSeries:
    one_minus_2z = _poly([1, -2], order)
    z5 = PowerSeries.z(order, 5)
    first = 2 * z5 * central_binomial_series(order) / one_minus_2z
    second = 2 * z5 * _poly([1, 0, -2], order) / (one_minus_2z * one_minus_2z)
    return first - second


def thm14_gf_coefficients(order: int) -> list[int]:
    return thm14_gf(order).integer_coeffs()


# --- skew-merged permutations ------------------------------------------------


def skew_merged(n: int) -> int:
    """Number of permutations of size n avoiding 2143 and 3412."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return binom(2 * n, n) - sum(2 ** (n - m - 1) * binom(2 * m, m) for m in range(n))


def skew_merged_gf(order: int) -> PowerSeries:
    num = _poly([1, -3], order)
    return num * central_binomial_series(order) / _poly([1, -2], order)


def skew_merged_gf_check(order: int) -> bool:
    coeffs = skew_merged_gf(order).integer_coeffs()
    return coeffs == [skew_merged(n) for n in range(order + 1)]


# --- at most one -1 ----------------------------------------------------------


def one_negative_formula(n: int) -> int:
    """ASMs of size n with exactly one -1: n!/6 * C(n, 3)."""
    return math.factorial(n) * binom(n, 3) // 6


def at_most_one_formula(n: int) -> int:
    return one_negative_formula(n) + math.factorial(n)


# --- the binomial identity behind the three -1s count --------------------------


def appendix_reindexed_lhs(m: int) -> int:
    """Reindexed, halved quadruple sum; m = n - 7."""
    total = 0
    for i in range(m + 1):
        for a in range(m + 1):
            for j in range(a + 1):
                total += binom(i + 2, j + 1) * binom(m - i + 2, a - j + 1) * binom(a, j) * binom(m - a, i - j)
    return total


def appendix_reindexed_rhs(m: int) -> int:
    return sum(2 ** (m + 2 - k) * binom(2 * k, k) for k in range(m + 3)) - (m + 5) * 2 ** (m + 1)


@dataclass
class IdentityRow:
    n: int
    lhs: int
    rhs: int
    reindexed_lhs: int
    reindexed_rhs: int

    @property
    def ok(self) -> bool:
        return (
            self.lhs == self.rhs
            and self.reindexed_lhs == self.reindexed_rhs
            and self.lhs == 2 * self.reindexed_lhs
        )


@dataclass
class IdentityReport:
    rows: list[IdentityRow] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.rows)


def verify_appendix_identity(n_lo: int, n_hi: int) -> IdentityReport:
    """Both the original (factor 2 included) and reindexed forms for n_lo..n_hi.

    The reindexed form at ``n`` is evaluated at shift ``n - 7``.
    """
    if not 7 <= n_lo <= n_hi:
        raise ValueError("need 7 <= n_lo <= n_hi")
    report = IdentityReport()
    for n in range(n_lo, n_hi + 1):
        report.rows.append(
            IdentityRow(
                n=n,
                lhs=thm14_triple_sum(n),
                rhs=thm14_closed(n),
                reindexed_lhs=appendix_reindexed_lhs(n - 7),
                reindexed_rhs=appendix_reindexed_rhs(n - 7),
            )
        )
    return report


def appendix_gf(order: int) -> PowerSeries:
    """z^2 times the generating function of the reindexed left side."""
    one_minus_2z = _poly([1, -2], order)
    first = central_binomial_series(order) / one_minus_2z
    second = _poly([1, 0, -2], order) / (one_minus_2z * one_minus_2z)
    return first - second


def thm14_gf_vs_sum_check(n_max: int) -> bool:
    """Coefficient of z^(m+2) in :func:`appendix_gf` equals the reindexed sum, m <= n_max."""
    coeffs = appendix_gf(n_max + 2).integer_coeffs()
    if coeffs[0] != 0 or coeffs[1] != 0:
        return False
    return all(coeffs[m + 2] == appendix_reindexed_lhs(m) for m in range(n_max + 1))
