import pytest

from field_enum import two_elementary_fields
from evenk.winv import (
    WInvariant,
    cyclic_conductor_is_valid,
    w_cyclic,
    w_elementary,
    w_quadratic,
    w_rational,
)


def test_w_rational_examples():
    assert w_rational(1).value == 24
    assert w_rational(2).value == 240
    assert w_rational(6).value == 65520
    assert w_rational(6).parts == {2: 4, 3: 2, 5: 1, 7: 1, 13: 1}


def test_w_quadratic_examples():
    assert w_quadratic(5, 1).value == 120
    assert w_quadratic(8, 1).value == 48
    assert w_quadratic(12, 1).value == 24


def test_w_cyclic_examples():
    assert w_cyclic(3, 7, 1).value == 168
    assert w_cyclic(3, 9, 1).value == 72
    assert w_cyclic(3, 13, 1).value == 24


def test_w_cyclic_validation():
    assert cyclic_conductor_is_valid(3, 63)
    assert not cyclic_conductor_is_valid(3, 27)
    assert not cyclic_conductor_is_valid(3, 11)
    with pytest.raises(ValueError):
        w_cyclic(3, 11, 1)
    with pytest.raises(ValueError):
        w_cyclic(2, 5, 1)


def test_w_elementary_examples():
    assert w_elementary(2, [8, 12, 24], 1).value == 48
    assert w_elementary(2, [12, 5, 60], 1).value == 120
    assert w_elementary(2, [8, 12, 5, 24, 40, 60, 120], 1).value == 240


def test_w_elementary_rejects_bad_counts():
    with pytest.raises(ValueError):
        w_elementary(2, [8, 12], 1)
    with pytest.raises(ValueError):
        w_elementary(2, [20, 12, 15], 1)


def test_multiplicativity_identity_two_elementary():
    fields = two_elementary_fields(120, 2) + two_elementary_fields(120, 3)
    assert fields, "enumeration found no fields"
    for discs in fields:
        n = 2 if len(discs) == 3 else 3
        exponent = (2**n - 2) // (2 - 1)
        for k in range(1, 11):
            lhs = w_rational(k).value ** exponent * w_elementary(2, list(discs), k).value
            rhs = 1
            for d in discs:
                rhs *= w_quadratic(d, k).value
            assert lhs == rhs, (discs, k)


def test_multiplicativity_identity_three_elementary():
    conductors = [7, 9, 63, 63]
    for k in range(1, 11):
        lhs = w_rational(k).value ** 3 * w_elementary(3, conductors, k).value
        rhs = 1
        for f in conductors:
            rhs *= w_cyclic(3, f, k).value
        assert lhs == rhs, k


def test_part_support():
    # every prime in the decomposition satisfies (l - 1) | 2k * degree
    cases = [
        (1, lambda k: w_rational(k)),
        (2, lambda k: w_quadratic(5, k)),
        (2, lambda k: w_quadratic(8, k)),
        (2, lambda k: w_quadratic(60, k)),
        (3, lambda k: w_cyclic(3, 7, k)),
        (3, lambda k: w_cyclic(3, 9, k)),
        (3, lambda k: w_cyclic(3, 63, k)),
    ]
    for degree, build in cases:
        for k in range(1, 13):
            w = build(k)
            for ell in w.parts:
                assert (2 * k * degree) % (ell - 1) == 0, (degree, k, ell)


def test_winvariant_consistency_check():
    with pytest.raises(ValueError):
        WInvariant(24, {2: 3})
    with pytest.raises(ValueError):
        WInvariant(24, {2: 3, 3: 0})
