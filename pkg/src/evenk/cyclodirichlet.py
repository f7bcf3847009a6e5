"""Exact cyclotomic arithmetic and Dirichlet characters.

Elements of Q(zeta_n) are rational-coefficient polynomials reduced
modulo the n-th cyclotomic polynomial.  Dirichlet characters store
their values as root-of-unity exponents, so multiplicativity and
equality checks stay in integer arithmetic; expansion into a
CyclotomicElement happens only when a generalized Bernoulli number or
an L-value is assembled.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, gcd, lcm

from .arith import bernoulli, factor_small


class NotRational(ArithmeticError):
    """A cyclotomic element expected to be rational is not."""


class ImprimitiveCharacter(ValueError):
    """Operation requires a primitive character."""


class CharacterFileError(ValueError):
    """A character file is malformed or describes a non-character."""


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factor_small(n):
        phi *= p ** (e - 1) * (p - 1)
    return phi


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of exact integer polynomial division (monic divisor)."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q[i - dd] = c
        for j, dj in enumerate(den):
            num[i - dd + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


_cyclotomic_cache: dict[int, tuple[int, ...]] = {}
_cyclotomic_lock = threading.RLock()


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n(x), constant term first.

    Built by exact division of x^n - 1 by the Phi_d for proper
    divisors d; memoized behind a lock.
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial requires n >= 1")
    with _cyclotomic_lock:
        if n in _cyclotomic_cache:
            return _cyclotomic_cache[n]
        num = [0] * (n + 1)
        num[0], num[n] = -1, 1
        for d in range(1, n):
            if n % d == 0:
                num = _poly_divmod_exact(num, list(cyclotomic_polynomial(d)))
        result = tuple(num)
        if len(result) - 1 != euler_phi(n):
            raise ArithmeticError(f"Phi_{n} has wrong degree")
        _cyclotomic_cache[n] = result
        return result


class CyclotomicElement:
    """An element of Q(zeta_n): phi(n) rational coordinates in the
    power basis 1, zeta, ..., zeta^(phi(n)-1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs) -> None:
        phi = euler_phi(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"need {phi} coefficients for order {order}")
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def from_rational(cls, value, order: int = 1) -> CyclotomicElement:
        coeffs = [Fraction(value)] + [Fraction(0)] * (euler_phi(order) - 1)
        return cls(order, coeffs)

    @classmethod
    def root_of_unity(cls, order: int, exponent: int = 1) -> CyclotomicElement:
        """zeta_order^exponent, fully reduced."""
        exponent %= order
        raw = [Fraction(0)] * (exponent + 1)
        raw[exponent] = Fraction(1)
        return cls(order, _reduce_mod_cyclotomic(raw, order))

    def __repr__(self) -> str:
        return f"CyclotomicElement(order={self.order}, coeffs={self.coeffs})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        if self.order != other.order:
            n = lcm(self.order, other.order)
            return self.embed(n) == other.embed(n)
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def _check_order(self, other: CyclotomicElement) -> None:
        if self.order != other.order:
            raise ValueError(
                f"order mismatch ({self.order} vs {other.order}); "
                "embed explicitly first"
            )

    def __add__(self, other) -> CyclotomicElement:
        other = _coerce(other, self.order)
        self._check_order(other)
        return CyclotomicElement(
            self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self) -> CyclotomicElement:
        return CyclotomicElement(self.order, [-a for a in self.coeffs])

    def __sub__(self, other) -> CyclotomicElement:
        return self + (-_coerce(other, self.order))

    def __rsub__(self, other) -> CyclotomicElement:
        return (-self) + _coerce(other, self.order)

    def __mul__(self, other) -> CyclotomicElement:
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement(self.order, [a * other for a in self.coeffs])
        self._check_order(other)
        raw = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        raw[i + j] += a * b
        return CyclotomicElement(self.order, _reduce_mod_cyclotomic(raw, self.order))

    __rmul__ = __mul__

    def __truediv__(self, other) -> CyclotomicElement:
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        raise TypeError("cyclotomic division only by rational scalars")

    def __pow__(self, exponent: int) -> CyclotomicElement:
        if exponent < 0:
            raise ValueError("negative cyclotomic powers unsupported")
        result = CyclotomicElement.from_rational(1, self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def embed(self, new_order: int) -> CyclotomicElement:
        """Image in Q(zeta_new_order); requires order | new_order."""
        if new_order % self.order:
            raise ValueError("can only embed into a multiple of the order")
        if new_order == self.order:
            return self
        step = new_order // self.order
        raw = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, a in enumerate(self.coeffs):
            raw[i * step] = a
        return CyclotomicElement(new_order, _reduce_mod_cyclotomic(raw, new_order))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"element of Q(zeta_{self.order}) is irrational")
        return self.coeffs[0]


def _coerce(value, order: int) -> CyclotomicElement:
    if isinstance(value, CyclotomicElement):
        return value
    if isinstance(value, (int, Fraction)):
        return CyclotomicElement.from_rational(value, order)
    raise TypeError(f"cannot coerce {type(value).__name__}")


def _reduce_mod_cyclotomic(raw: list[Fraction], order: int) -> list[Fraction]:
    """Remainder of the polynomial `raw` (constant term first) modulo
    Phi_order, after folding exponents with zeta^order = 1."""
    phi = euler_phi(order)
    if len(raw) > order:
        folded = [Fraction(0)] * order
        for k, c in enumerate(raw):
            folded[k % order] += c
        raw = folded
    else:
        raw = list(raw)
    mod = cyclotomic_polynomial(order)
    for i in range(len(raw) - 1, phi - 1, -1):
        c = raw[i]
        if c:
            for j in range(phi + 1):
                raw[i - phi + j] -= c * mod[j]
    out = raw[:phi]
    out += [Fraction(0)] * (phi - len(out))
    return out


def cyc_add(a: CyclotomicElement, b: CyclotomicElement) -> CyclotomicElement:
    return a + b


def cyc_mul(a: CyclotomicElement, b: CyclotomicElement) -> CyclotomicElement:
    return a * b


def cyc_pow(a: CyclotomicElement, exponent: int) -> CyclotomicElement:
    return a**exponent


def as_rational(a: CyclotomicElement) -> Fraction:
    return a.as_rational()


# ---------------------------------------------------------------------------
# Dirichlet characters
# ---------------------------------------------------------------------------


def _canonical_units(m: int) -> list[int]:
    """Unit residues of Z/mZ as the integers a in [1, m] with
    gcd(a, m) = 1, reduced mod m (so m = 1 yields [0])."""
    if m == 1:
        return [0]
    return [a for a in range(1, m) if gcd(a, m) == 1]


class DirichletCharacter:
    """A character of (Z/mZ)^* with values recorded as exponents:
    chi(a) = zeta_order^exponent(a).

    The stored order is the exact multiplicative order of chi, and
    complete multiplicativity is verified exhaustively over all unit
    pairs at construction.
    """

    __slots__ = ("modulus", "order", "_exp", "_conductor")

    def __init__(self, modulus: int, order: int, value_exponents: dict[int, int]):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        if order < 1:
            raise ValueError("order must be >= 1")
        units = _canonical_units(modulus)
        if sorted(value_exponents) != units:
            raise ValueError("value map must cover exactly the units")
        exps = {a: e % order for a, e in value_exponents.items()}
        # normalize to the exact order of the character
        g = order
        for e in exps.values():
            g = gcd(g, e)
            if g == 1:
                break
        if g > 1:
            order //= g
            exps = {a: e // g for a, e in exps.items()}
        one = 1 % modulus
        if exps[one] != 0:
            raise ValueError("chi(1) must be 1")
        table = [-1] * modulus if modulus > 1 else [0]
        for a, e in exps.items():
            table[a] = e
        for i, u in enumerate(units):
            eu = exps[u]
            for v in units[i:]:
                if table[u * v % modulus] != (eu + exps[v]) % order:
                    raise ValueError(
                        f"multiplicativity fails at ({u}, {v}) mod {modulus}"
                    )
        self.modulus = modulus
        self.order = order
        self._exp = exps
        self._conductor: int | None = None

    def __repr__(self) -> str:
        return (
            f"DirichletCharacter(modulus={self.modulus}, order={self.order}, "
            f"exponents={self._exp})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.order == other.order
            and self._exp == other._exp
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.order, tuple(sorted(self._exp.items()))))

    def exponent(self, a: int) -> int | None:
        """Exponent e with chi(a) = zeta_order^e, or None when
        gcd(a, modulus) > 1 (i.e. chi(a) = 0)."""
        return self._exp.get(a % self.modulus)

    def exponent_items(self) -> tuple[tuple[int, int], ...]:
        """(residue, exponent) pairs in residue order; a canonical key."""
        return tuple(sorted(self._exp.items()))

    def value(self, a: int) -> CyclotomicElement:
        e = self.exponent(a)
        if e is None:
            return CyclotomicElement.from_rational(0, self.order)
        return CyclotomicElement.root_of_unity(self.order, e)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_even(self) -> bool:
        if self.modulus <= 2:
            return True
        return self._exp[self.modulus - 1] == 0

    def __pow__(self, j: int) -> DirichletCharacter:
        j %= self.order
        return DirichletCharacter(
            self.modulus,
            self.order,
            {a: e * j % self.order for a, e in self._exp.items()},
        )

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if self.modulus != other.modulus:
            raise ValueError("character product needs equal moduli")
        n = lcm(self.order, other.order)
        return DirichletCharacter(
            self.modulus,
            n,
            {
                a: (e * (n // self.order) + other._exp[a] * (n // other.order)) % n
                for a, e in self._exp.items()
            },
        )

    def conductor(self) -> int:
        """Smallest modulus f through which chi factors."""
        if self._conductor is None:
            m = self.modulus
            units = _canonical_units(m)
            for f in _sorted_divisors(m):
                if all(
                    self._exp[a] == 0 for a in units if a % f == 1 % f
                ):
                    self._conductor = f
                    break
        return self._conductor

    def primitive_part(self) -> DirichletCharacter:
        """The primitive character mod conductor(chi) inducing chi."""
        f = self.conductor()
        if f == self.modulus:
            return self
        exps: dict[int, int] = {}
        for b in _canonical_units(f):
            a = b if b else 1
            while gcd(a, self.modulus) != 1:
                a += f
            exps[b] = self._exp[a % self.modulus]
        return DirichletCharacter(f, self.order, exps)

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus


def _sorted_divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor_small(n):
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def _primitive_root(q: int, e: int) -> int:
    """Primitive root mod q^e for odd prime q."""
    phi = q - 1
    prime_parts = [p for p, _ in factor_small(phi)]
    g = 2
    while True:
        if all(pow(g, phi // p, q) != 1 for p in prime_parts):
            break
        g += 1
    if e > 1 and pow(g, q - 1, q * q) == 1:
        g += q
    return g


@lru_cache(maxsize=None)
def _unit_group_data(m: int):
    """Cyclic decomposition of (Z/mZ)^* with discrete-log tables.

    Returns (gens, units) where gens is a list of (generator mod its
    prime power, component_order, dlog) and dlog maps each unit residue
    mod m to its exponent along that component.  Odd prime powers use a
    primitive root; 2^e splits as <-1> x <5> for e >= 3.
    """
    units = _canonical_units(m)
    if m <= 2:
        return [], units
    gens: list[tuple[int, int, dict[int, int]]] = []
    for q, e in factor_small(m):
        qe = q**e
        local: list[tuple[int, int, dict[int, int]]] = []
        if q == 2:
            if e == 1:
                continue
            if e == 2:
                local.append((3, 2, {1: 0, 3: 1}))
            else:
                pow5 = {}
                x = 1
                for j in range(qe // 4):
                    pow5[x] = j
                    x = x * 5 % qe
                sign_table: dict[int, int] = {}
                five_table: dict[int, int] = {}
                for u in range(1, qe, 2):
                    if u in pow5:
                        sign_table[u] = 0
                        five_table[u] = pow5[u]
                    else:
                        sign_table[u] = 1
                        five_table[u] = pow5[qe - u]
                local.append((qe - 1, 2, sign_table))
                local.append((5, qe // 4, five_table))
        else:
            g = _primitive_root(q, e)
            order = euler_phi(qe)
            table = {}
            x = 1
            for i in range(order):
                table[x] = i
                x = x * g % qe
            local.append((g, order, table))
        for g, order, table in local:
            dlog = {u: table[u % qe] for u in units}
            gens.append((g, order, dlog))
    return gens, units


def _character_from_tuple(m: int, t: tuple[int, ...]) -> DirichletCharacter:
    gens, units = _unit_group_data(m)
    if not gens:
        return DirichletCharacter(m, 1, {a: 0 for a in _canonical_units(m)})
    n = lcm(*(order for _, order, _ in gens))
    exps = {}
    for u in units:
        e = 0
        for (_, order, dlog), ti in zip(gens, t):
            e += ti * dlog[u] * (n // order)
        exps[u] = e % n
    return DirichletCharacter(m, n, exps)


def character_group(m: int) -> list[DirichletCharacter]:
    """All phi(m) Dirichlet characters mod m."""
    if m < 1:
        raise ValueError("character_group requires m >= 1")
    gens, _ = _unit_group_data(m)
    if not gens:
        return [DirichletCharacter(m, 1, {a: 0 for a in _canonical_units(m)})]
    ranges = [range(order) for _, order, _ in gens]
    return [_character_from_tuple(m, t) for t in product(*ranges)]


def characters_of_order_dividing(m: int, p: int) -> list[DirichletCharacter]:
    """The subgroup of characters mod m whose order divides p."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    gens, _ = _unit_group_data(m)
    if not gens:
        return [DirichletCharacter(m, 1, {a: 0 for a in _canonical_units(m)})]
    choices = []
    for _, order, _ in gens:
        step = order // gcd(order, p)
        choices.append(range(0, order, step))
    return [_character_from_tuple(m, t) for t in product(*choices)]


@lru_cache(maxsize=None)
def quadratic_character(d: int) -> DirichletCharacter:
    """The Kronecker character a -> (d|a), as a character mod |d|."""
    from .arith import kronecker

    m = abs(d)
    exps = {}
    for a in _canonical_units(m):
        v = kronecker(d, a if a else 1)
        exps[a] = 0 if v == 1 else 1
    order = 2 if any(exps.values()) else 1
    return DirichletCharacter(m, order, exps)


@dataclass(frozen=True)
class CharacterOrbit:
    """A Galois orbit {chi^i : gcd(i, order) = 1} of a character."""

    representative: DirichletCharacter
    conjugates: tuple[DirichletCharacter, ...]

    @classmethod
    def of(cls, chi: DirichletCharacter) -> CharacterOrbit:
        conj = tuple(
            chi**i for i in range(1, chi.order + 1) if gcd(i, chi.order) == 1
        )
        return cls(chi, conj)


@lru_cache(maxsize=None)
def _primitive_orbits_of_order(f: int, p: int) -> tuple[CharacterOrbit, ...]:
    return tuple(_build_primitive_orbits(f, p))


def primitive_orbits_of_order(f: int, p: int) -> list[CharacterOrbit]:
    """Galois orbits of the order-p characters with conductor exactly f,
    in a fixed construction order (orbit indices are stable but need not
    match any external labeling)."""
    return list(_primitive_orbits_of_order(f, p))


def _build_primitive_orbits(f: int, p: int) -> list[CharacterOrbit]:
    chars = [
        chi
        for chi in characters_of_order_dividing(f, p)
        if chi.order == p and chi.conductor() == f
    ]
    chars.sort(key=lambda c: c.exponent_items())
    orbits: list[CharacterOrbit] = []
    seen: set[DirichletCharacter] = set()
    for chi in chars:
        if chi in seen:
            continue
        orbit = CharacterOrbit.of(chi)
        seen.update(orbit.conjugates)
        orbits.append(orbit)
    return orbits


# ---------------------------------------------------------------------------
# Generalized Bernoulli numbers and L-values
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_poly_int_coeffs(n: int, f: int) -> tuple[tuple[int, ...], int]:
    """Integers (c_0..c_n, d) with d * f^(n-1) * B_n(a/f) =
    (1/f) * sum_i c_i a^(n-i), i.e. the numerator polynomial of the
    generalized Bernoulli summand, evaluated by Horner."""
    denoms = [bernoulli(i).denominator for i in range(n + 1)]
    d = 1
    for q in denoms:
        d = d * q // gcd(d, q)
    coeffs = []
    for i in range(n + 1):
        b = bernoulli(i)
        coeffs.append(comb(n, i) * (b.numerator * (d // b.denominator)) * f**i)
    return tuple(coeffs), d


def gen_bernoulli(chi: DirichletCharacter, n: int) -> CyclotomicElement:
    """Generalized Bernoulli number B_{n,chi} for primitive chi:

        B_{n,chi} = f^(n-1) * sum_{a=1..f} chi(a) B_n(a/f).

    Exact, as an element of Q(zeta_order).  Imprimitive input is
    rejected: the same sum over a non-minimal modulus is a different
    (Euler-factor-deflated) quantity.
    """
    if n < 1:
        raise ValueError("gen_bernoulli requires n >= 1")
    if not chi.is_primitive():
        raise ImprimitiveCharacter(
            f"character mod {chi.modulus} has conductor {chi.conductor()}"
        )
    f = chi.modulus
    coeffs, d = _bernoulli_poly_int_coeffs(n, f)
    buckets = [0] * chi.order
    for a in range(1, f + 1):
        e = chi.exponent(a)
        if e is None:
            continue
        acc = 0
        for c in coeffs:
            acc = acc * a + c
        buckets[e] += acc
    total = CyclotomicElement.from_rational(0, chi.order)
    for e, s in enumerate(buckets):
        if s:
            total = total + CyclotomicElement.root_of_unity(chi.order, e) * Fraction(
                s, d * f
            )
    return total


def l_value(chi: DirichletCharacter, k: int) -> CyclotomicElement:
    """L(chi, 1-2k) = -B_{2k,chi} / (2k) for a primitive even chi."""
    if k < 1:
        raise ValueError("l_value requires k >= 1")
    if not chi.is_even():
        raise ValueError("odd characters do not belong to totally real fields")
    return gen_bernoulli(chi, 2 * k) * Fraction(-1, 2 * k)


def orbit_l_product(orbit: CharacterOrbit, k: int) -> Fraction:
    """Product of L(chi^i, 1-2k) over the orbit; Galois-stable, so the
    result must be rational (NotRational signals an arithmetic bug)."""
    if orbit.representative.is_trivial():
        raise ValueError("orbit_l_product requires a nontrivial orbit")
    total = CyclotomicElement.from_rational(1, orbit.representative.order)
    for chi in orbit.conjugates:
        total = total * l_value(chi.primitive_part(), k)
    return total.as_rational()


# ---------------------------------------------------------------------------
# Character files
# ---------------------------------------------------------------------------


def parse_character_file(path) -> list[DirichletCharacter]:
    """Read characters from a UTF-8 JSON file.

    One object per file: {"modulus": m, "order": n, "values":
    [[a, e], ...]} where the pairs list every residue coprime to m in
    increasing order and chi(a) = zeta_n^e with 0 <= e < n.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CharacterFileError(f"cannot read character file: {exc}") from exc
    if not isinstance(data, dict):
        raise CharacterFileError("top-level JSON object expected")
    try:
        m = int(data["modulus"])
        n = int(data["order"])
        values = data["values"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CharacterFileError(f"missing or bad field: {exc}") from exc
    if m < 1 or n < 1:
        raise CharacterFileError("modulus and order must be positive")
    if not isinstance(values, list):
        raise CharacterFileError("values must be a list of [residue, exponent]")
    seen: dict[int, int] = {}
    listed = []
    for item in values:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, int) for x in item)
        ):
            raise CharacterFileError(f"bad value entry {item!r}")
        a, e = item
        if not 0 <= e < n:
            raise CharacterFileError(f"exponent {e} out of range for order {n}")
        if a in seen:
            raise CharacterFileError(f"duplicate residue {a}")
        seen[a] = e
        listed.append(a)
    if listed != sorted(listed):
        raise CharacterFileError("residues must be listed in increasing order")
    if sorted(seen) != _canonical_units(m):
        raise CharacterFileError("residues must be exactly the units mod m")
    try:
        chi = DirichletCharacter(m, n, seen)
    except ValueError as exc:
        raise CharacterFileError(str(exc)) from exc
    return [chi]
