"""Shared test helper: enumerate small 2-elementary totally real fields
by the fundamental discriminants of their quadratic subfields."""

from math import lcm

from evenk.siegel import fundamental_discriminant


def squarefree_part(n):
    out = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1
    return out * n


def two_elementary_fields(max_conductor, rank):
    """Sorted subfield-discriminant tuples for each 2-elementary field
    of the given rank whose conductor is at most max_conductor."""
    squarefrees = [
        m for m in range(2, max_conductor + 1) if squarefree_part(m) == m
    ]
    if rank == 2:
        gens_iter = (
            (m1, m2)
            for i, m1 in enumerate(squarefrees)
            for m2 in squarefrees[i + 1 :]
        )
    else:
        gens_iter = (
            (m1, m2, m3)
            for i, m1 in enumerate(squarefrees)
            for j, m2 in enumerate(squarefrees[i + 1 :], start=i + 1)
            for m3 in squarefrees[j + 1 :]
        )
    seen = set()
    fields = []
    for gens in gens_iter:
        members = set()
        for mask in range(1, 2 ** len(gens)):
            prod = 1
            for bit, m in enumerate(gens):
                if mask >> bit & 1:
                    prod *= m
            members.add(squarefree_part(prod))
        if 1 in members or len(members) != 2 ** len(gens) - 1:
            continue  # generators were multiplicatively dependent
        discs = tuple(sorted(fundamental_discriminant(m) for m in members))
        if max(discs) > max_conductor or lcm(*discs) > max_conductor:
            continue
        if discs in seen:
            continue
        seen.add(discs)
        fields.append(discs)
    return fields
