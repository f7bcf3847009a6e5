"""Finite formula for zeta values of real quadratic fields.

The power sums e_j(m) count representations b^2 + 4ac = m with a, c > 0
and b running over all integers; combined with the Kronecker character
of the field and the weights b_j(4k) from the auxiliary q-expansions,
they give exact values of zeta_K(1-2k).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .arith import divisor_sum, divisors, factor_small, kronecker
from .qseries import siegel_coeffs


def is_fundamental_discriminant(d: int) -> bool:
    """True for discriminants of real quadratic fields: d > 1 with
    d = 1 mod 4 squarefree, or d = 4m for squarefree m = 2, 3 mod 4."""
    if d <= 1:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factor_small(n))


class QuadraticDiscriminant:
    """A positive fundamental discriminant, verified at construction."""

    __slots__ = ("value",)

    def __init__(self, value: int) -> None:
        if not is_fundamental_discriminant(value):
            raise ValueError(f"{value} is not a fundamental discriminant > 1")
        self.value = value

    def __repr__(self) -> str:
        return f"QuadraticDiscriminant({self.value})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadraticDiscriminant):
            return self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("QuadraticDiscriminant", self.value))

    def __int__(self) -> int:
        return self.value


def fundamental_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt(m)) for a squarefree m > 1."""
    if m <= 1 or not _squarefree(m):
        raise ValueError("fundamental_discriminant needs squarefree m > 1")
    return m if m % 4 == 1 else 4 * m


def e_sum(m: int, j: int) -> int:
    """e_j(m) = sum of a^j over b^2 + 4ac = m with a, c > 0, b in Z.

    Evaluated as the b = 0 term plus twice the b >= 1 terms, each term
    being sigma_j((m - b^2)/4); zero when m = 2, 3 mod 4.
    """
    if m < 1:
        raise ValueError("e_sum requires m >= 1")
    if j < 1 or j % 2 == 0:
        raise ValueError("e_sum requires positive odd j")
    if m % 4 in (2, 3):
        return 0
    total = divisor_sum(m // 4, j) if m % 4 == 0 else 0
    start = 2 if m % 4 == 0 else 1
    side = 0
    for b in range(start, isqrt(m - 1) + 1, 2):
        side += divisor_sum((m - b * b) // 4, j)
    return total + 2 * side


def e_sum_brute_force(m: int, j: int) -> int:
    """Direct triple-loop enumeration of b^2 + 4ac = m; the oracle
    against which e_sum is checked."""
    total = 0
    for a in range(1, m + 1):
        for c in range(1, m + 1):
            rem = m - 4 * a * c
            if rem < 0:
                break
            b = isqrt(rem)
            if b * b == rem:
                total += a**j * (1 if b == 0 else 2)
    return total


def chi_weighted_sum(disc: QuadraticDiscriminant | int, l: int, k: int) -> int:
    """sum over m | l of (D|m) * m^(2k-1) * e_{2k-1}((l/m)^2 * D)."""
    d = int(disc)
    if not isinstance(disc, QuadraticDiscriminant):
        QuadraticDiscriminant(d)
    if l < 1 or k < 1:
        raise ValueError("chi_weighted_sum requires l, k >= 1")
    j = 2 * k - 1
    return sum(
        kronecker(d, m) * m**j * e_sum((l // m) ** 2 * d, j) for m in divisors(l)
    )


@lru_cache(maxsize=None)
def _siegel_weights(h: int) -> tuple[Fraction, ...]:
    return tuple(siegel_coeffs(h))


def zeta_quadratic(disc: QuadraticDiscriminant | int, k: int) -> Fraction:
    """Exact zeta_K(1-2k) for the real quadratic field of discriminant D:

        4 * sum_{j=1}^{floor(k/3)+1} b_j(4k) * S(D, j, k)

    where S is chi_weighted_sum.
    """
    d = int(disc)
    if not isinstance(disc, QuadraticDiscriminant):
        QuadraticDiscriminant(d)
    if k < 1:
        raise ValueError("zeta_quadratic requires k >= 1")
    weights = _siegel_weights(4 * k)
    terms = k // 3 + 1
    if len(weights) != terms:
        raise AssertionError(f"expected {terms} weights for h={4 * k}")
    total = Fraction(0)
    for j in range(1, terms + 1):
        total += weights[j - 1] * chi_weighted_sum(disc, j, k)
    return 4 * total
