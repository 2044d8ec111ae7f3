import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from sl2charvar.classifier import (
    EMPTY,
    NontrivialPowerCondition,
    classify,
    classify_all,
    compare_with_oracle,
    condition_C,
    condition_C_2adic,
    condition_C_definition,
    formula_dim,
    intersection_graph,
    solve_power_system,
)
from sl2charvar.components import MAX_GRAPH_EDGES
from sl2charvar.trace_algebra import GroupPresentation, red_value

G = GroupPresentation
NONZERO = [k for k in range(-6, 7) if k]


def _exhaustive_solvable(n1, s1, n2, s2):
    """Some lam != +-1 with lam^n1 = s1 and lam^n2 = s2, searched over
    lam = zeta_{2L}^j with exponent arithmetic mod 2L."""
    L = abs(n1 * n2) // gcd(n1, n2)
    M = 2 * L
    for j in range(M):
        if j in (0, L):
            continue
        ok = True
        for n, s in ((n1, s1), (n2, s2)):
            r = (j * n) % M
            if r != (0 if s == 1 else L):
                ok = False
        if ok:
            return True
    return False


def test_condition_C_examples():
    assert condition_C(4, 6, 1, 1) is False
    assert condition_C(3, 6, -1, 1) is True
    assert condition_C(2, 2, -1, -1) is True
    with pytest.raises(ValueError):
        condition_C(0, 3, 1, 1)


def test_condition_C_two_forms_agree():
    r = [k for k in range(-30, 31) if k]
    for n1 in r:
        for n2 in r:
            for s1 in (1, -1):
                for s2 in (1, -1):
                    assert condition_C_definition(n1, n2, s1, s2) == condition_C_2adic(n1, n2, s1, s2)


def test_power_system_matches_exhaustive_search():
    r = [k for k in range(-10, 11) if k]
    for n1 in r:
        for n2 in r:
            for s1 in (1, -1):
                for s2 in (1, -1):
                    sol = solve_power_system(NontrivialPowerCondition(n1, s1), NontrivialPowerCondition(n2, s2))
                    assert sol.solvable == _exhaustive_solvable(n1, s1, n2, s2) == condition_C(n1, n2, s1, s2)


def test_power_system_examples():
    sol = solve_power_system(NontrivialPowerCondition(2, -1), NontrivialPowerCondition(2, -1))
    assert sol.solvable and [w.value for w in sol.witnesses] == [0]
    assert not solve_power_system(NontrivialPowerCondition(2, 1), NontrivialPowerCondition(4, 1)).solvable
    sol = solve_power_system(NontrivialPowerCondition(3, 1), NontrivialPowerCondition(6, 1))
    assert sol.solvable and [w.value for w in sol.witnesses] == [-1]


def test_zero_exponent_conventions():
    assert NontrivialPowerCondition(0, 1).holds_at(0)
    assert not NontrivialPowerCondition(0, -1).holds_at(0)


def test_gamma2_components():
    reps = classify_all(G(2, 1, -2, -2))
    by = {r.id: r for r in reps}
    assert by[9].dim == 0 and by[9].gen_irr
    assert by[9].orbit_count == 1 and len(by[9].points) == 2
    for q in by[9].points:
        assert q.y.value == -1
        assert q.x.order == 8
        assert q.z * q.z == q.x.value * q.x.value / 4
    for i in range(1, 11):
        if i != 9:
            assert not by[i].gen_irr
    g = intersection_graph(G(2, 1, -2, -2), reps)
    assert g.nodes == [9] and g.edges == []


def test_dim2_example():
    p = G(2, 3, -2, -3)
    r1 = classify(p, 1)
    assert r1.dim == 2 and r1.formula_dim == 2
    assert condition_C(2, -2, -1, -1)
    g = intersection_graph(p)
    assert g.nodes == [1, 5, 7, 9, 10]
    assert g.edges == [(1, 5), (1, 7), (1, 10), (5, 9), (7, 9)]


def test_degenerate_exponents():
    reps = classify_all(G(1, 1, 1, 1))
    assert all(r.dim == EMPTY for r in reps)
    reps = classify_all(G(1, 0, 1, 0))
    assert len(reps) == 10


@given(st.tuples(*[st.sampled_from(NONZERO)] * 4))
def test_graph_inside_maximal_graph(e):
    g = intersection_graph(G(*e))
    for a, b in g.edges:
        assert frozenset((a, b)) in MAX_GRAPH_EDGES
        assert a in g.nodes and b in g.nodes


@given(st.tuples(*[st.sampled_from(NONZERO)] * 4))
def test_structure_agrees_with_closed_form_dimensions(e):
    p = G(*e)
    for r in classify_all(p):
        assert r.dim == formula_dim(p, r.id)


@given(st.tuples(*[st.sampled_from(NONZERO)] * 4))
def test_non_integral_points_are_irreducible(e):
    for r in classify_all(G(*e)):
        for q in r.points:
            if not q.z.is_algebraic_integer():
                assert not red_value(q.x.value, q.y.value, q.z).is_zero()
                assert q.gen_irr


@pytest.mark.parametrize("seed", range(25))
def test_against_brute_force(seed):
    rng = random.Random(1000 + seed)
    p = G(*[rng.choice(NONZERO) for _ in range(4)])
    assert compare_with_oracle(p) == []


def test_zero_b_exponents_differ_from_closed_form():
    # with m1 = m2 = 0 the closed-form dimension undercounts: M9 carries a surface
    p = G(1, 0, 3, 0)
    r9 = classify(p, 9)
    assert r9.dim == 2 and r9.formula_dim == 1 and not r9.formula_agrees
    assert compare_with_oracle(p) == []
