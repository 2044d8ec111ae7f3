import random

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from sl2charvar.groebner import (
    IdealData,
    ResourceLimitExceeded,
    groebner_basis,
    is_groebner,
    normal_form,
)
from sl2charvar.mpoly import MPoly

SX, SY, SZ = sp.symbols("x y z")


def _to_sympy(p: MPoly):
    return sp.expand(sp.sympify(str(p).replace("^", "**"), locals={"x": SX, "y": SY, "z": SZ}))


def _random_poly(rng, nterms=3, deg=2):
    terms = []
    for _ in range(nterms):
        c = rng.randint(-3, 3) or 1
        e = [rng.randint(0, deg) for _ in range(3)]
        terms.append(f"{c}*x^{e[0]}*y^{e[1]}*z^{e[2]}")
    return MPoly.parse(" + ".join(terms))


def test_parse_and_print():
    p = MPoly.parse("2/3*x^2*y - z + g_n1*d_m2")
    assert MPoly.parse(str(p)) == p
    assert p.variables() == {"x", "y", "z", "g_n1", "d_m2"}
    assert MPoly.parse("(x+1)^2") == MPoly.parse("x^2 + 2*x + 1")


@given(st.integers(0, 10_000))
def test_ring_laws(seed):
    rng = random.Random(seed)
    a, b, c = (_random_poly(rng) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert _to_sympy(a * b) == sp.expand(_to_sympy(a) * _to_sympy(b))


def test_small_examples():
    assert groebner_basis([MPoly.parse("x"), MPoly.parse("y")]) == [MPoly.parse("x"), MPoly.parse("y")]
    I = IdealData.from_strings(["x^2 - 1", "x*y - y"])
    ok, nf = I.member(MPoly.parse("x*y - y"))
    assert ok and nf.is_zero()
    assert not I.contains_one()


@pytest.mark.parametrize("seed", range(50))
def test_basis_matches_sympy(seed):
    rng = random.Random(seed)
    gens = [_random_poly(rng, nterms=rng.randint(2, 3)) for _ in range(rng.randint(2, 3))]
    ours = groebner_basis(gens)
    assert is_groebner(ours)
    ref = sp.groebner([_to_sympy(g) for g in gens], SX, SY, SZ, order="grevlex")
    ref_set = {sp.Poly(g, SX, SY, SZ).monic().as_expr() for g in ref.exprs}
    our_set = {sp.Poly(_to_sympy(g), SX, SY, SZ).monic().as_expr() for g in ours}
    assert our_set == ref_set
    for g in gens:
        assert normal_form(g, ours).is_zero()


@given(st.integers(0, 10_000))
def test_membership_stable_under_generator_order(seed):
    rng = random.Random(seed)
    gens = [_random_poly(rng, nterms=2) for _ in range(3)]
    probe = gens[0] * _random_poly(rng, nterms=2) + gens[1]
    shuffled = gens[:]
    rng.shuffle(shuffled)
    a = IdealData(gens).member(probe)[0]
    b = IdealData(shuffled).member(probe)[0]
    assert a and b


def test_step_limit_raises():
    gens = [MPoly.parse(s) for s in ["x^2*y - z", "x*y^2 - x", "y*z - x^2 + 1"]]
    with pytest.raises(ResourceLimitExceeded):
        groebner_basis(gens, max_steps=1)
    assert groebner_basis(gens) == [MPoly.const(1)]
