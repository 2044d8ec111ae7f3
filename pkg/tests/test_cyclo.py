from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from sl2charvar.cyclo import (
    CycloElt,
    RootOfUnity,
    RootTrace,
    denominator_primes,
    euler_phi,
    newton_slopes,
    norm_valuation,
    traces_of_order_dividing,
    units_mod,
    valuations_above,
)

X = sp.Symbol("X")


def _elt(n, coeffs):
    return CycloElt.from_coeffs(n, [Fraction(c) for c in coeffs])


def _sympy_value(n, coeffs):
    z = sp.exp(2 * sp.pi * sp.I / n)
    return sum(sp.Rational(c) * z**i for i, c in enumerate(coeffs))


def _resultant_norm(n, coeffs):
    t = sp.Symbol("t")
    a = sum(sp.Rational(c) * t**i for i, c in enumerate(coeffs))
    return sp.resultant(sp.cyclotomic_poly(n, t), a, t)


small = st.lists(st.integers(-3, 3), min_size=1, max_size=4)


def test_field_examples():
    z8 = CycloElt.zeta(8)
    assert z8 * z8.inverse() == 1
    r = z8 + z8.inverse()
    assert r * r == 2
    z3 = CycloElt.zeta(3)
    assert z3 + z3.inverse() == -1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        CycloElt.zeta(8) / CycloElt.rational(0)


@given(st.sampled_from([3, 4, 5, 7, 8, 9, 12, 15, 16, 20]), small, small)
def test_field_axioms(n, u, v):
    a, b = _elt(n, u), _elt(n, v)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a
    if not b.is_zero():
        assert (a / b) * b == a


@given(st.sampled_from([5, 7, 8, 9, 12]), st.sampled_from([3, 4, 5]), small, small)
def test_mixed_conductors_lift(n, m, u, v):
    a, b = _elt(n, u), _elt(m, v)
    s = a + b
    assert s - b == a
    assert (a * b) / b == a if not b.is_zero() else True


@pytest.mark.parametrize(
    "n,coeffs",
    [(5, [1, 2]), (7, [0, 1, 1]), (8, [1, 0, 3]), (9, [2, -1]), (12, [1, 1, 0, 1]), (16, [0, 1, 0, 0, 1]), (15, [1, -1, 1])],
)
def test_norm_against_resultant(n, coeffs):
    a = _elt(n, coeffs)
    assert a.norm(n) == Fraction(int(_resultant_norm(n, coeffs)))


@pytest.mark.parametrize("n,coeffs", [(8, [0, 1, 0, -1]), (5, [1, 1]), (12, [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1]), (9, [Fraction(1, 2), 1])])
def test_min_poly_against_sympy(n, coeffs):
    a = _elt(n, coeffs)
    ours = sum(sp.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(a.min_poly()))
    ref = sp.minimal_polynomial(_sympy_value(n, coeffs), X)
    assert sp.Poly(ours, X).monic() == sp.Poly(ref, X).monic()


def test_min_poly_examples():
    r = RootTrace.of(8, 1).value
    assert r.min_poly() == [-2, 0, 1]
    assert CycloElt.rational(-1).min_poly() == [1, 1]
    assert (-r.inverse()).min_poly() == [Fraction(-1, 2), 0, 1]


@given(st.sampled_from([5, 7, 8, 9, 11, 12, 16, 20, 24, 36, 40]), small)
def test_min_poly_round_trip(n, u):
    a = _elt(n, u)
    val = CycloElt.rational(0)
    for c in reversed(a.min_poly()):
        val = val * a + CycloElt.rational(c)
    assert val.is_zero()


@given(st.sampled_from([5, 8, 9, 12]), small, small)
def test_norm_multiplicative(n, u, v):
    a, b = _elt(n, u), _elt(n, v)
    assert (a * b).norm(n) == a.norm(n) * b.norm(n)


def test_norm_examples():
    assert (1 - CycloElt.zeta(9)).norm() == 3
    assert (1 - CycloElt.zeta(8)).norm() == 2
    assert CycloElt.rational(5).norm(12) == 625


@pytest.mark.parametrize("ell,i", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (11, 1), (13, 1)])
def test_norm_one_minus_root(ell, i):
    q = ell**i
    for m in range(1, q):
        if m % ell:
            assert (1 - CycloElt.zeta(q, m)).norm() == ell


def test_algebraic_integer_examples():
    r = RootTrace.of(8, 1).value
    assert r.is_algebraic_integer()
    assert not (-r.inverse()).is_algebraic_integer()
    assert CycloElt.rational(0).is_algebraic_integer()


def test_valuation_examples():
    a = -RootTrace.of(8, 1).value.inverse()
    assert valuations_above(a, 2).slopes == (Fraction(-1, 2), Fraction(-1, 2))
    assert not valuations_above(a, 2).is_integral_somewhere
    rep3 = valuations_above(a, 3)
    assert rep3.slopes == (0, 0) and rep3.is_integral_everywhere
    assert valuations_above(CycloElt.rational(7), 7).slopes == (1,)
    with pytest.raises(ValueError):
        valuations_above(CycloElt.rational(0), 2)


def test_newton_polygon_by_hand():
    # 4 + 2X + X^2 at 2: hull through (0,2), (1,1), (2,0) gives slope 1 twice
    assert newton_slopes([4, 2, 1], 2) == (1, 1)
    # 1 + 4X^2: hull (0,0), (2,2) gives valuations -1, -1
    assert newton_slopes([1, 0, 4], 2) == (-1, -1)
    # 2 + X + X^2 at 2: segments (0,1)-(1,0)-(2,0)
    assert sorted(newton_slopes([2, 1, 1], 2)) == [0, 1]


@given(st.sampled_from([(2, 8), (2, 16), (3, 9), (3, 27), (5, 25), (7, 7)]), small)
def test_unique_prime_slope_matches_norm(case, u):
    ell, q = case
    a = _elt(q, u)
    if a.is_zero():
        return
    rep = valuations_above(a, ell)
    assert len(set(rep.slopes)) == 1
    assert rep.slopes[0] == norm_valuation(a, ell)


@given(st.sampled_from([5, 8, 9, 12, 15]), st.lists(st.integers(-6, 6), min_size=1, max_size=4), st.integers(1, 12))
def test_integrality_iff_slopes(n, u, den):
    a = _elt(n, [Fraction(c, den) for c in u])
    if a.is_zero():
        return
    ps = denominator_primes(a)
    integral = all(s >= 0 for ell in ps for s in valuations_above(a, ell).slopes)
    assert a.is_algebraic_integer() == integral


def test_roots_of_unity_normalize():
    r = RootOfUnity.of(8, 6)
    assert (r.order, r.exponent) == (4, 3)
    assert r.element() == CycloElt.zeta(8, 6)
    assert RootOfUnity.of(6, 3).is_pm_one()


def test_trace_enumeration_counts():
    # traces of roots of order dividing n: one per inverse pair
    for n in range(1, 30):
        ts = traces_of_order_dividing(n)
        assert len(ts) == n // 2 + 1
        assert len({t.value for t in ts}) == len(ts)


def test_units_and_phi():
    for n in range(1, 60):
        assert len(units_mod(n)) == euler_phi(n)


def test_json_round_trip():
    a = _elt(12, [Fraction(1, 3), -2, 0, 5])
    assert CycloElt.from_json(a.to_json()) == a
