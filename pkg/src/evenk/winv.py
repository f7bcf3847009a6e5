"""The invariants w_2k(F): orders of the Galois-fixed twisted roots
of unity, computed per field class with an explicit per-prime split.

The 2-part is 2^(2+v_2(2k)), doubled exactly when sqrt(2) lies in the
field.  An odd prime l contributes l^(1+v_l(k)) when (l-1) | 2k; a
degree-p subfield inside Q(zeta_l) lowers that divisibility requirement
to (l-1)/p | 2k, and for odd p a subfield inside Q(zeta_{p^2}) raises
the p-exponent by one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import factor_small, is_prime, primes_up_to, valuation
from .siegel import QuadraticDiscriminant, is_fundamental_discriminant


@dataclass(frozen=True)
class WInvariant:
    """w value together with its prime decomposition."""

    value: int
    parts: dict[int, int]

    def __post_init__(self) -> None:
        prod = 1
        for ell, e in self.parts.items():
            if e < 1:
                raise ValueError("zero exponents must be omitted")
            prod *= ell**e
        if prod != self.value:
            raise ValueError("parts do not multiply to value")

    def __int__(self) -> int:
        return self.value


def _assemble(k: int, *, sqrt2: bool, zeta_prime: dict[int, int],
              zeta_p_squared: int | None) -> WInvariant:
    """Common per-prime case analysis.

    zeta_prime maps l -> p for each subfield of degree p inside
    Q(zeta_l); zeta_p_squared is p when a degree-p subfield of
    Q(zeta_{p^2}) is present.
    """
    if k < 1:
        raise ValueError("w invariants need k >= 1")
    two_k = 2 * k
    parts: dict[int, int] = {2: 2 + valuation(two_k, 2) + (1 if sqrt2 else 0)}
    candidates = set(primes_up_to(two_k + 1)) | set(zeta_prime)
    if zeta_p_squared is not None:
        candidates.add(zeta_p_squared)
    for ell in sorted(candidates):
        if ell == 2:
            continue
        exponent = 0
        if two_k % (ell - 1) == 0:
            exponent = 1 + valuation(k, ell)
        elif ell in zeta_prime and two_k % ((ell - 1) // zeta_prime[ell]) == 0:
            exponent = 1 + valuation(k, ell)
        if ell == zeta_p_squared and two_k % (ell - 1) == 0:
            exponent = 2 + valuation(k, ell)
        if exponent:
            parts[ell] = exponent
    value = 1
    for ell, e in parts.items():
        value *= ell**e
    return WInvariant(value, parts)


def w_rational(k: int) -> WInvariant:
    """w_2k(Q)."""
    return _assemble(k, sqrt2=False, zeta_prime={}, zeta_p_squared=None)


def w_quadratic(disc: QuadraticDiscriminant | int, k: int) -> WInvariant:
    """w_2k of the real quadratic field with fundamental discriminant D.

    D = 8 doubles the 2-part (sqrt(2) in the field); a prime D = 1 mod 4
    puts the field inside Q(zeta_D).
    """
    d = int(disc)
    if not isinstance(disc, QuadraticDiscriminant):
        QuadraticDiscriminant(d)
    zeta_prime = {d: 2} if d % 4 == 1 and is_prime(d) else {}
    return _assemble(k, sqrt2=(d == 8), zeta_prime=zeta_prime,
                     zeta_p_squared=None)


def cyclic_conductor_is_valid(p: int, f: int) -> bool:
    """Whether f is the conductor of some real cyclic degree-p field:
    v_p(f) is 0 or 2 attained by p^2, every other prime factor is
    simple and = 1 mod p."""
    if f < 3:
        return False
    for q, e in factor_small(f):
        if q == p:
            if e != 2:
                return False
        elif e != 1 or (q - 1) % p != 0 or q == 2:
            return False
    return True


def w_cyclic(p: int, f: int, k: int) -> WInvariant:
    """w_2k of a real cyclic degree-p field of conductor f (p odd)."""
    if p == 2 or not is_prime(p):
        raise ValueError("w_cyclic expects an odd prime degree")
    if not cyclic_conductor_is_valid(p, f):
        raise ValueError(f"{f} is not a real cyclic degree-{p} conductor")
    if f == p * p:
        return _assemble(k, sqrt2=False, zeta_prime={}, zeta_p_squared=p)
    if is_prime(f):
        return _assemble(k, sqrt2=False, zeta_prime={f: p},
                         zeta_p_squared=None)
    return _assemble(k, sqrt2=False, zeta_prime={}, zeta_p_squared=None)


def w_elementary(p: int, conductors: list[int], k: int) -> WInvariant:
    """w_2k of a totally real p-elementary field, given the conductors
    of all its (p^n - 1)/(p - 1) degree-p subfields.

    For p = 2 the conductors are the fundamental discriminants of the
    quadratic subfields.
    """
    if not is_prime(p):
        raise ValueError("p must be prime")
    count = len(conductors)
    n = 1
    while (p ** (n + 1) - 1) // (p - 1) < count:
        n += 1
    n += 1
    if (p**n - 1) // (p - 1) != count or n < 2:
        raise ValueError(
            f"{count} subfields is not (p^n - 1)/(p - 1) for any n >= 2"
        )
    if len(set(conductors)) != count and p != 2:
        pass  # same conductor can house several cyclic fields when p > 2
    sqrt2 = False
    zeta_prime: dict[int, int] = {}
    zeta_p_squared: int | None = None
    for f in conductors:
        if p == 2:
            if not is_fundamental_discriminant(f):
                raise ValueError(f"{f} is not a fundamental discriminant")
            if f == 8:
                sqrt2 = True
            elif f % 4 == 1 and is_prime(f):
                zeta_prime[f] = 2
        else:
            if not cyclic_conductor_is_valid(p, f):
                raise ValueError(f"{f} is not a degree-{p} conductor")
            if f == p * p:
                zeta_p_squared = p
            elif is_prime(f):
                zeta_prime[f] = p
    return _assemble(k, sqrt2=sqrt2, zeta_prime=zeta_prime,
                     zeta_p_squared=zeta_p_squared)
