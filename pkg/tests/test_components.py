import random

import pytest

from sl2charvar.components import (
    MAX_GRAPH_EDGES,
    TRIVIAL,
    component_ideal,
    intersection_ideal,
    specialized_component,
    universal_ideal,
    square_difference_combination,
    verify_decomposition,
    verify_matrix_semantics,
    verify_square_difference_corrected,
)
from sl2charvar.groebner import IdealData, is_groebner
from sl2charvar.mpoly import MPoly
from sl2charvar.trace_algebra import GroupPresentation, determinant_generators, red_poly, specialize


@pytest.fixture(scope="module")
def certificate():
    return verify_decomposition()


def test_component_tables_shape():
    assert [len(component_ideal(i).generators) for i in range(1, 11)] == [7] * 10
    p1 = [str(g) for g in component_ideal(1).generators[:4]]
    assert p1 == ["g_n1", "g_n2", "d_n1 + 1", "d_n2 + 1"]
    z_gen = MPoly.parse("z*g_n1*g_m1 + x*g_n1*d_m1 + y*d_n1*g_m1 + 2*d_n1*d_m1")
    assert z_gen in component_ideal(9).generators
    with pytest.raises((ValueError, KeyError, IndexError)):
        component_ideal(11)


def test_p10_is_p9_with_signs_swapped():
    p9 = {str(g) for g in component_ideal(9).generators}
    p10 = {str(g) for g in component_ideal(10).generators}
    assert "g_n1 + g_n2" in p9 and "g_n1 - g_n2" in p10
    assert "g_m1 - g_m2" in p9 and "g_m1 + g_m2" in p10


def test_intersection_tables():
    assert len(MAX_GRAPH_EDGES) == 16
    assert len(intersection_ideal(1, 5).generators) == 8
    assert MPoly.parse("y*g_m1 + 2*d_m1") in intersection_ideal(2, 9).generators
    assert intersection_ideal(9, 10) == TRIVIAL


def test_membership_examples():
    P1 = component_ideal(1)
    assert P1.member(MPoly.parse("g_n1*g_m1"))[0]
    assert not P1.contains_one()
    assert not universal_ideal().member(red_poly())[0]
    assert (component_ideal(1) + component_ideal(2)).contains_one()


def test_component_bases_are_groebner():
    for i in range(1, 11):
        assert is_groebner(component_ideal(i).basis())


def test_universal_ideal_in_every_component(certificate):
    a = certificate.section("a:")
    assert len(a) == 10 * len(universal_ideal().generators) + 10
    assert all(c.passed for c in a)


def test_intersections_two_way(certificate):
    b = certificate.section("b:")
    assert len(b) == 16 * 3
    assert all(c.passed for c in b)


def test_missing_edges_are_empty(certificate):
    d = certificate.section("d:")
    assert len(d) == 45 - 16
    assert all(c.passed for c in d)


def test_square_differences_in_universal_ideal(certificate):
    mem = [c for c in certificate.section("c:") if c.name.endswith("in I")]
    assert len(mem) == 2 and all(c.passed for c in mem)


def test_literal_square_difference_combination_is_not_an_identity(certificate):
    # the literal combination is off by one symbol; the report must say so
    assert [c.name for c in certificate.failures()] == ["c: literal combination equals g_n1^2 - g_n2^2"]
    target, combo = square_difference_combination("literal")
    assert not (target - combo).is_zero()


def test_corrected_square_difference_combination():
    assert verify_square_difference_corrected().passed


@pytest.mark.parametrize(
    "exps,i",
    [((2, 1, -2, -2), 1), ((2, 3, 4, 5), 1), ((2, 3, 4, 5), 9), ((2, 3, -2, -3), 10), ((3, -2, 5, 4), 5), ((5, 2, -1, 3), 3)],
)
def test_matrix_semantics(exps, i):
    assert verify_matrix_semantics(GroupPresentation(*exps), i).passed


def test_gamma2_component1_is_unit_ideal():
    P = specialized_component(GroupPresentation(2, 1, -2, -2), 1)
    assert P.contains_one()


def test_specialization_kills_determinant_generators():
    rng = random.Random(7)
    for _ in range(20):
        e = [rng.choice([k for k in range(-10, 11) if k]) for _ in range(4)]
        p = GroupPresentation(*e)
        for g in determinant_generators():
            assert specialize(g, p).is_zero()


def test_ideal_sum_and_fixture_names():
    s = component_ideal(1) + component_ideal(5)
    assert isinstance(s, IdealData)
    assert len(s.generators) == 14
