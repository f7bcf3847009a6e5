"""Exact integer and rational primitives.

Everything here is pure big-integer / big-rational arithmetic: divisor
power sums, the full Kronecker symbol, l-adic valuations, Bernoulli
numbers and Bernoulli polynomial values, a prime sieve, and best-effort
factorization (trial division + Pollard rho with Brent cycle detection).
`fractions.Fraction` is the rational scalar used throughout the package.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt

Rational = Fraction

# Witnesses making Miller-Rabin deterministic below 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def primes_up_to(x: int) -> list[int]:
    """All primes <= x in increasing order (sieve of Eratosthenes)."""
    if x < 1:
        raise ValueError("primes_up_to requires x >= 1")
    if x < 2:
        return []
    sieve = bytearray([1]) * (x + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(x) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, x + 1) if sieve[i]]


def is_prime(n: int) -> bool:
    """Miller-Rabin: deterministic below 3.3e24, 64 rounds above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1

    def witness(a: int) -> bool:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if n < _MR_DETERMINISTIC_BOUND:
        bases = _MR_BASES
    else:
        rng = random.Random(n)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(64))
    return not any(witness(a) for a in bases)


@lru_cache(maxsize=None)
def factor_small(n: int) -> tuple[tuple[int, int], ...]:
    """Complete factorization by trial division; for modest n only."""
    if n < 1:
        raise ValueError("factor_small requires n >= 1")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """Positive divisors of n in increasing order."""
    out = [1]
    for p, e in factor_small(n):
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


@lru_cache(maxsize=None)
def divisor_sum(m: int, j: int) -> int:
    """sigma_j(m) = sum of d^j over the positive divisors d of m."""
    if m < 1:
        raise ValueError("divisor_sum requires m >= 1")
    if j < 0:
        raise ValueError("divisor_sum requires j >= 0")
    total = 1
    for p, e in factor_small(m):
        if j == 0:
            total *= e + 1
        else:
            total *= (p ** (j * (e + 1)) - 1) // (p**j - 1)
    return total


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), extended to all integer n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    k = 1
    if v % 2 == 1 and a % 8 in (3, 5):
        k = -1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    # n odd and positive: reciprocity loop
    while True:
        a %= n
        if a == 0:
            return k if n == 1 else 0
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v % 2 == 1 and n % 8 in (3, 5):
            k = -k
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a, n = n, a


def valuation(x: int | Fraction, ell: int) -> int:
    """Largest e with ell^e dividing x; negative for denominators."""
    if not is_prime(ell):
        raise ValueError(f"valuation requires a prime, got {ell}")
    if x == 0:
        raise ValueError("valuation of 0 is undefined")
    if isinstance(x, Fraction):
        return valuation(x.numerator, ell) - valuation(x.denominator, ell)
    x = abs(x)
    e = 0
    while x % ell == 0:
        x //= ell
        e += 1
    return e


_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.RLock()


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with the B_1 = -1/2 convention.

    Computed by the defining recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0
    and memoized; the memo is guarded by a lock so concurrent callers
    are safe.
    """
    if n < 0:
        raise ValueError("bernoulli requires n >= 0")
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= n:
            m = len(_bernoulli_cache)
            if m > 1 and m % 2 == 1:
                _bernoulli_cache.append(Fraction(0))
                continue
            acc = sum(
                comb(m + 1, j) * _bernoulli_cache[j] for j in range(m)
            )
            _bernoulli_cache.append(-acc / (m + 1))
        return _bernoulli_cache[n]


def bernoulli_poly_value(n: int, a: int, f: int) -> Fraction:
    """B_n(a/f), the n-th Bernoulli polynomial at the rational a/f.

    B_n(x) = sum_{i=0}^{n} C(n, i) B_i x^(n-i).
    """
    if n < 0:
        raise ValueError("bernoulli_poly_value requires n >= 0")
    if f < 1:
        raise ValueError("bernoulli_poly_value requires f >= 1")
    if not 0 <= a <= f:
        raise ValueError("bernoulli_poly_value requires 0 <= a <= f")
    x = Fraction(a, f)
    total = Fraction(0)
    power = Fraction(1)
    for i in range(n, -1, -1):
        total += comb(n, i) * bernoulli(i) * power
        power *= x
    return total


@dataclass(frozen=True)
class FactorBudget:
    """Bounds for best-effort factorization."""

    trial_limit: int = 10**6
    rho_iterations: int = 10**6


@dataclass(frozen=True)
class PartialFactorization:
    """Factored part of an integer plus whatever resisted the budget.

    factored lists (prime, exponent) pairs in increasing prime order;
    cofactor is the remaining unfactored part (1 when complete).  The
    listed primes always pass the primality test and the product of
    everything reproduces the original integer.
    """

    factored: tuple[tuple[int, int], ...]
    cofactor: int = 1
    complete: bool = True

    def __post_init__(self) -> None:
        for p, e in self.factored:
            if e < 1 or not is_prime(p):
                raise ValueError(f"bad factorization entry ({p}, {e})")
        if self.complete and self.cofactor != 1:
            raise ValueError("complete factorization with cofactor != 1")

    def value(self) -> int:
        n = self.cofactor
        for p, e in self.factored:
            n *= p**e
        return n

    def format(self) -> str:
        """Render like '2^11·3^2·7·17', with a trailing '·C' marker for
        an unfactored composite cofactor."""
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factored]
        if not self.complete:
            parts.append(str(self.cofactor))
            return "·".join(parts) + "·C"
        return "·".join(parts) if parts else "1"


_trial_primes_cache: dict[int, list[int]] = {}
_trial_primes_lock = threading.Lock()


def _trial_primes(limit: int) -> list[int]:
    key = min(limit, 10**6)
    with _trial_primes_lock:
        if key not in _trial_primes_cache:
            _trial_primes_cache[key] = primes_up_to(max(key, 2))
        return _trial_primes_cache[key]


def _pollard_rho_brent(n: int, budget: int) -> int | None:
    """A nontrivial factor of composite odd n, or None within budget."""
    rng = random.Random(n)
    iterations = 0
    while iterations < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and iterations < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1 and iterations < budget:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                iterations += min(m, r - k)
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorize(n: int, budget: FactorBudget | None = None) -> PartialFactorization:
    """Best-effort factorization of n >= 1 under the given budget.

    Trial division first, then Pollard rho (Brent variant) on what is
    left; anything still composite when the budget runs out is returned
    as an explicit cofactor with complete=False, never mislabeled.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if budget is None:
        budget = FactorBudget()
    found: dict[int, int] = {}
    stubborn: list[int] = []
    m = n
    tested_to = 1
    for p in _trial_primes(budget.trial_limit):
        if p * p > m:
            tested_to = p
            break
        tested_to = p
        while m % p == 0:
            m //= p
            found[p] = found.get(p, 0) + 1
    if m > 1 and m <= tested_to * tested_to:
        # trial division below sqrt(m) proves the survivor prime
        found[m] = found.get(m, 0) + 1
        m = 1
    stack = [m] if m > 1 else []
    while stack:
        c = stack.pop()
        if is_prime(c):
            found[c] = found.get(c, 0) + 1
            continue
        g = _pollard_rho_brent(c, budget.rho_iterations)
        if g is None:
            stubborn.append(c)
        else:
            stack.append(g)
            stack.append(c // g)
    cofactor = 1
    for c in stubborn:
        cofactor *= c
    return PartialFactorization(
        factored=tuple(sorted(found.items())),
        cofactor=cofactor,
        complete=cofactor == 1,
    )
