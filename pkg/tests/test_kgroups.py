from fractions import Fraction

import pytest

from evenk.kgroups import (
    AbelianByCharacters,
    CubicParameters,
    CyclicPrime,
    Elementary,
    NoRepresentation,
    NonIntegralOrder,
    Rationals,
    RealQuadratic,
    UnsupportedField,
    combine_elementary,
    cubic_from_conductor,
    cyclic_orbit,
    elementary_order_via_characters,
    k_even_order,
    k_odd_order,
    kz,
    quadratic_k2_closed_form,
    quadratic_k6_closed_form,
    zeta_abelian,
)
from evenk.cyclodirichlet import primitive_orbits_of_order
from evenk.siegel import is_fundamental_discriminant


def fundamentals(bound):
    return [d for d in range(2, bound + 1) if is_fundamental_discriminant(d)]


def multiquad_235():
    return Elementary(
        2,
        tuple(RealQuadratic(d) for d in (8, 12, 5, 24, 40, 60, 120)),
    )


# -- kz -------------------------------------------------------------------------

def test_kz_sequence():
    assert [kz(n) for n in (2, 6, 10, 14, 18, 22, 26)] == [2, 1, 2, 1, 2, 691, 2]


def test_kz_rejects_other_residues():
    for n in (1, 4, 8, 12, 20):
        with pytest.raises(ValueError):
            kz(n)


# -- zeta values ------------------------------------------------------------------

def test_zeta_abelian_examples():
    assert zeta_abelian(Rationals(), 1) == Fraction(-1, 12)
    assert zeta_abelian(RealQuadratic(5), 1) == Fraction(1, 30)
    assert zeta_abelian(CyclicPrime(3, 7), 1) == Fraction(-1, 21)


def test_zeta_abelian_elementary_is_product_over_parts():
    spec = multiquad_235()
    value = zeta_abelian(Rationals(), 2)
    for part in spec.parts:
        value *= zeta_abelian(part, 2) / zeta_abelian(Rationals(), 2)
    assert zeta_abelian(spec, 2) == value


def test_zeta_abelian_by_characters():
    orbits = tuple(primitive_orbits_of_order(63, 3))
    spec = AbelianByCharacters(63, orbits)
    assert spec.degree() == 5
    product = zeta_abelian(Rationals(), 1)
    for part in (CyclicPrime(3, 63, 0), CyclicPrime(3, 63, 1)):
        product *= zeta_abelian(part, 1) / zeta_abelian(Rationals(), 1)
    assert zeta_abelian(spec, 1) == product


def test_zeta_abelian_degree_21_field():
    # the degree-21 subfield of Q(zeta_43): orbits of order 3, 7 and 21
    # characters mod 43; the orbit products must all collapse to Q even
    # though the order-21 computation runs inside Q(zeta_21)
    from evenk.cyclodirichlet import CharacterOrbit, character_group

    orbits = []
    seen = set()
    for chi in character_group(43):
        if chi.is_trivial() or 21 % chi.order or chi in seen:
            continue
        orbit = CharacterOrbit.of(chi)
        seen.update(orbit.conjugates)
        orbits.append(orbit)
    spec = AbelianByCharacters(43, tuple(orbits))
    assert spec.degree() == 21
    assert sorted(len(o.conjugates) for o in orbits) == [2, 6, 12]
    # zeta_F(1-2k) carries the functional-equation sign (-1)^(21k)
    assert zeta_abelian(spec, 1) < 0
    assert zeta_abelian(spec, 2) > 0


# -- odd-index orders ---------------------------------------------------------------

def test_k_odd_examples():
    assert k_odd_order(Rationals(), 1).order == 48
    assert k_odd_order(Rationals(), 2).order == 240
    assert k_odd_order(RealQuadratic(8), 1).order == 192


# -- even-index orders ----------------------------------------------------------------

def test_k_even_examples():
    assert k_even_order(Rationals(), 1).order == 2
    assert k_even_order(CyclicPrime(3, 7), 1).order == 8
    assert k_even_order(RealQuadratic(5), 1).order == 4


def test_k_even_equals_kz():
    for k in range(1, 11):
        assert k_even_order(Rationals(), k).order == kz(4 * k - 2)
        assert k_even_order(Rationals(), k, method="kz").order == kz(4 * k - 2)


def test_k_even_method_validation():
    with pytest.raises(UnsupportedField):
        k_even_order(Rationals(), 1, method="zagier")
    with pytest.raises(UnsupportedField):
        k_even_order(RealQuadratic(5), 1, method="kz")
    with pytest.raises(UnsupportedField):
        k_even_order(RealQuadratic(5), 1, method="nonsense")


def test_route_equivalence_sample():
    for d in fundamentals(60):
        for k in range(1, 4):
            a = k_even_order(RealQuadratic(d), k, method="zagier")
            b = k_even_order(RealQuadratic(d), k, method="characters")
            assert a.order == b.order
            assert a.zeta_value == b.zeta_value


def test_abelian_by_characters_supports_zeta_only():
    spec = AbelianByCharacters(63, tuple(primitive_orbits_of_order(63, 3)))
    with pytest.raises(UnsupportedField):
        k_even_order(spec, 1)


# -- closed forms -----------------------------------------------------------------------

def test_closed_forms_match_general_route():
    for d in fundamentals(500):
        assert quadratic_k2_closed_form(d) == k_even_order(RealQuadratic(d), 1).order
        assert quadratic_k6_closed_form(d) == k_even_order(RealQuadratic(d), 2).order


def test_three_divisibility_bridge():
    for d in fundamentals(500):
        k2 = quadratic_k2_closed_form(d)
        k6 = quadratic_k6_closed_form(d)
        assert (k2 % 3 == 0) == (k6 % 3 == 0), d


# -- elementary fields ---------------------------------------------------------------------

def test_elementary_validation():
    with pytest.raises(ValueError):
        Elementary(2, (RealQuadratic(8), RealQuadratic(12)))
    with pytest.raises(ValueError):
        Elementary(3, (RealQuadratic(8), RealQuadratic(12), RealQuadratic(24)))
    with pytest.raises(ValueError):
        Elementary(2, (RealQuadratic(8), RealQuadratic(8), RealQuadratic(12)))
    spec = Elementary(3, tuple(
        CyclicPrime(3, f, orbit) for f, orbit in ((7, 0), (9, 0), (63, 0), (63, 1))
    ))
    assert spec.rank() == 2
    assert spec.degree() == 9
    assert spec.conductor() == 63


def test_combine_elementary_multiquad_k1():
    assert combine_elementary(multiquad_235(), 1).order == 2**11 * 3**2 * 7 * 17


def test_combine_elementary_matches_part_methods():
    spec = multiquad_235()
    for k in (1, 2, 3):
        a = combine_elementary(spec, k, part_method="characters").order
        b = combine_elementary(spec, k, part_method="zagier").order
        assert a == b


def test_characters_route_equivalence():
    spec24 = Elementary(2, tuple(RealQuadratic(d) for d in (8, 12, 24)))
    for k in range(1, 6):
        assert (
            combine_elementary(spec24, k).order
            == elementary_order_via_characters(24, 2, 2, k).order
        )
    assert (
        elementary_order_via_characters(120, 2, 3, 1).order
        == combine_elementary(multiquad_235(), 1).order
    )


def test_characters_route_equivalence_all_small_conductors():
    from math import lcm

    from field_enum import two_elementary_fields

    checked = 0
    for discs in two_elementary_fields(120, 2) + two_elementary_fields(120, 3):
        n = 2 if len(discs) == 3 else 3
        conductor = lcm(*discs)
        spec = Elementary(2, tuple(RealQuadratic(d) for d in discs))
        for k in range(1, 6):
            try:
                via_chars = elementary_order_via_characters(conductor, 2, n, k)
            except UnsupportedField:
                # conductor carries more even characters than the field
                break
            assert via_chars.order == combine_elementary(spec, k).order, (discs, k)
            checked += 1
    assert checked >= 50


def test_characters_route_on_degree_nine_field():
    spec = Elementary(3, tuple(
        CyclicPrime(3, f, orbit) for f, orbit in ((7, 0), (9, 0), (63, 0), (63, 1))
    ))
    for k in (1, 2):
        assert (
            elementary_order_via_characters(63, 3, 2, k).order
            == combine_elementary(spec, k).order
        )


def test_characters_route_rejects_low_rank():
    with pytest.raises(UnsupportedField):
        elementary_order_via_characters(5, 2, 1, 1)


def test_characters_route_rejects_oversized_conductor_group():
    # Q(sqrt 6, sqrt 10) has conductor 120 but the even quadratic
    # characters mod 120 span a rank-3 group, so the conductor route
    # cannot see the smaller field.
    with pytest.raises(UnsupportedField):
        elementary_order_via_characters(120, 2, 2, 1)


def test_k_even_order_dispatches_elementary_methods():
    spec = multiquad_235()
    assert k_even_order(spec, 1).method == "combiner"
    assert k_even_order(spec, 1, method="characters").order == k_even_order(spec, 1).order


def test_cyclic_orbit_index_bounds():
    first = cyclic_orbit(3, 63, 0)
    second = cyclic_orbit(3, 63, 1)
    assert first.representative != second.representative
    with pytest.raises(UnsupportedField):
        cyclic_orbit(3, 63, 5)


# -- Hasse parameterization -------------------------------------------------------------------

def test_cubic_from_conductor_examples():
    assert cubic_from_conductor(7) == CubicParameters(7, -1, 3)
    assert cubic_from_conductor(9) == CubicParameters(9, -3, 3)
    assert cubic_from_conductor(499) == CubicParameters(499, 32, 18)


def test_cubic_polynomial():
    params = cubic_from_conductor(7)
    assert params.polynomial_coefficients() == (7, -21, 0, 1)
    assert params.polynomial_str() == "X^3 - 21X + 7"


def test_cubic_from_conductor_rejections():
    for f in (4, 5, 11, 25):
        with pytest.raises(NoRepresentation):
            cubic_from_conductor(f)


# -- integrality guard ---------------------------------------------------------------------------

def test_integrality_sweep_small():
    for d in fundamentals(100):
        for k in (1, 2, 3):
            result = k_even_order(RealQuadratic(d), k)
            assert result.order >= 1
    for f in (7, 9, 13, 19):
        for k in (1, 2):
            assert k_even_order(CyclicPrime(3, f), k).order >= 1
