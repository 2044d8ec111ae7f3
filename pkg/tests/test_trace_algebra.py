import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sl2charvar.cyclo import CycloElt, RootTrace
from sl2charvar.groebner import IdealData
from sl2charvar.mpoly import MPoly
from sl2charvar.oracle import trace_algebra_equivalence
from sl2charvar.trace_algebra import (
    SYMBOLIC,
    GroupPresentation,
    TraceVector,
    Word,
    expand_word,
    h_mult,
    red_poly,
    red_value,
    relation_ideal_generators,
    specialize,
    word_trace,
)

P = MPoly.parse
ONE, A, B, AB = SYMBOLIC.basis()


def _vec(c1, ca, cb, cab):
    return SYMBOLIC.vector(P(c1), P(ca), P(cb), P(cab))


def test_multiplication_table():
    assert h_mult(A, A).coeffs() == (P("-1"), P("x"), P("0"), P("0"))
    assert h_mult(B, A).coeffs() == (P("z - x*y"), P("y"), P("x"), P("-1"))
    assert h_mult(A, AB).coeffs() == (P("0"), P("0"), P("-1"), P("x"))
    assert h_mult(AB, B).coeffs() == (P("0"), P("-1"), P("0"), P("y"))
    v = _vec("x+1", "y", "z^2", "3")
    assert h_mult(ONE, v) == v and h_mult(v, ONE) == v


small_poly = st.sampled_from(["0", "1", "x", "y", "z", "x*y - 1", "2*z + x", "y^2", "-3"])
vectors = st.tuples(small_poly, small_poly, small_poly, small_poly).map(lambda t: _vec(*t))


@given(vectors, vectors, vectors)
def test_associative(u, v, w):
    assert h_mult(h_mult(u, v), w) == h_mult(u, h_mult(v, w))


def test_word_parse_and_normalize():
    w = Word.parse("a^2 b^-1 a^3")
    assert w.syllables == (("a", 2), ("b", -1), ("a", 3))
    assert str(w) == "a^2 b^-1 a^3"
    assert len(w) == 6
    assert Word.parse("a^2 a^-2 b").syllables == (("b", 1),)
    assert Word.parse("a b").inverse().syllables == (("b", -1), ("a", -1))


def test_expansions():
    assert expand_word(Word.parse("a b")).coeffs() == (P("0"), P("0"), P("0"), P("1"))
    v = expand_word(Word.parse("a^2 b^-1"))
    # a^2 = x a - 1, b^-1 = y - b
    assert v.coeffs() == (P("-y"), P("x*y"), P("1"), P("-x"))
    assert word_trace(Word.parse("a b a^-1 b^-1")) - 2 == red_poly()


def test_red_values():
    assert red_value(2, 2, 2) == 0
    assert red_value(0, 0, 0) == -4
    x = RootTrace.of(8, 1).value
    z = -x.inverse()
    assert red_value(x, CycloElt.rational(-1), z) == Fraction(-3, 2)


def test_concrete_is_specialized_symbolic():
    rng = random.Random(3)
    for _ in range(20):
        e = [rng.choice([k for k in range(-8, 9) if k]) for _ in range(4)]
        p = GroupPresentation(*e)
        concrete = relation_ideal_generators(p, "concrete")
        sym = relation_ideal_generators(p, "symbolic")
        specialized = [specialize(g, p) for g in sym]
        nonzero = [g for g in specialized if not g.is_zero()]
        assert nonzero == concrete


def test_gamma2_equation_in_relation_ideal():
    I = IdealData(relation_ideal_generators(GroupPresentation(2, 1, -2, -2)))
    # z c_2(x) - y c_3(x) = 0
    assert I.member(P("z*x - y*(x^2 - 1)"))[0]


def test_commutator_relation_has_no_irreducible_points():
    gens = relation_ideal_generators(GroupPresentation(1, 1, -1, -1))
    assert IdealData(gens).contains_one()


def test_presentation_derived_values():
    p = GroupPresentation(6, 1, -3, -2)
    assert (p.s, p.t) == (9, 3)
    with pytest.raises(ValueError):
        GroupPresentation(0, 1, 1, 1)


def test_word_expansion_against_matrices():
    rep = trace_algebra_equivalence(count=200, seed=11, max_len=8)
    assert rep.passed, rep.failures[:3]


def test_trace_vector_scale_and_trace():
    v = _vec("1", "2", "3", "4")
    assert v.trace() == P("2 + 2*x + 3*y + 4*z")
    assert v.scale(P("2")) == _vec("2", "4", "6", "8")
    assert isinstance(v, TraceVector)
