import random
from fractions import Fraction

import pytest

from sl2charvar.chebyshev import cheb_pair
from sl2charvar.cyclo import CycloElt, RootOfUnity
from sl2charvar.oracle import (
    Mat2,
    OracleError,
    build_rep,
    check_word,
    default_orders,
    enumerate_points,
    has_common_eigenvector,
    summarize,
    trace_of_word,
)
from sl2charvar.trace_algebra import GroupPresentation, Word, red_value

Q = CycloElt.rational
GAMMA2 = GroupPresentation(2, 1, -2, -2)


def _gamma2_rep():
    lam, mu = CycloElt.zeta(8), CycloElt.zeta(3)
    x = lam + lam.inverse()
    return build_rep(lam, mu, -x.inverse())


def test_lift_realizes_traces():
    rng = random.Random(1)
    for _ in range(50):
        lam = Q(Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice([1, -1]))
        mu = CycloElt.zeta(rng.randint(3, 12), rng.randint(1, 5))
        z = Q(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        r = build_rep(lam, mu, z)
        assert r.A.det() == 1 and r.B.det() == 1
        assert r.A.trace() == lam + lam.inverse()
        assert r.B.trace() == mu + mu.inverse()
        assert (r.A * r.B).trace() == z


def test_lift_examples():
    r = build_rep(Q(1), Q(1), Q(2))
    assert r.A.trace() == 2 and r.B.trace() == 2 and (r.A * r.B).trace() == 2
    assert has_common_eigenvector(r)
    lam, mu = Q(3), Q(Fraction(1, 2))
    r = build_rep(lam, mu, lam * mu + (lam * mu).inverse())
    assert has_common_eigenvector(r)
    with pytest.raises((ZeroDivisionError, OracleError, ValueError)):
        build_rep(Q(0), Q(1), Q(1))


def test_gamma2_relation_holds():
    r = _gamma2_rep()
    w = GAMMA2.word()
    assert str(w) == "a^2 b a^-2 b^-2"
    assert check_word(r, w)
    ident = build_rep(Q(1), Q(1), Q(2))
    assert check_word(ident, Word.parse("a b a^-1 b^-1"))


def test_random_rep_violates_relation():
    assert not check_word(build_rep(Q(2), Q(3), Q(Fraction(5, 7))), GAMMA2.word())


def test_trace_of_word_examples():
    lam, mu, z = Q(2), Q(Fraction(1, 3)), Q(Fraction(7, 5))
    r = build_rep(lam, mu, z)
    x, y = lam + lam.inverse(), mu + mu.inverse()
    assert trace_of_word(r, Word.parse("a b a^-1 b^-1")) == x * x + y * y + z * z - x * y * z - 2
    assert trace_of_word(r, Word.parse("a")) == x
    assert trace_of_word(r, Word.parse("a b")) == z


def test_irreducibility_matches_red():
    rng = random.Random(5)
    seen = {True: 0, False: 0}
    for k in range(100):
        lam = Q(Fraction(rng.randint(1, 6), rng.randint(1, 6)) * rng.choice([1, -1]))
        mu = Q(Fraction(rng.randint(1, 6), rng.randint(1, 6)) * rng.choice([1, -1]))
        choice = k % 3
        if choice == 0:
            z = lam * mu + (lam * mu).inverse()
        elif choice == 1:
            z = lam * mu.inverse() + lam.inverse() * mu
        else:
            z = Q(Fraction(rng.randint(-20, 20), rng.randint(1, 7)))
        r = build_rep(lam, mu, z)
        x, y = r.A.trace(), r.B.trace()
        reducible = has_common_eigenvector(r)
        assert reducible == red_value(x, y, z).is_zero()
        seen[reducible] += 1
    assert seen[True] and seen[False]


@pytest.mark.parametrize("order,k", [(5, 1), (7, 3), (8, 3), (9, 2), (12, 5), (10, 1)])
def test_eigenvalue_formula(order, k):
    lam = CycloElt.zeta(order, k)
    x = lam + lam.inverse()
    for n in range(-6, 15):
        lhs = cheb_pair(n).c(x)
        rhs = (lam**n - lam ** (-n)) / (lam - lam.inverse())
        assert lhs == rhs


def test_matrix_power_matches_chebyshev():
    lam = CycloElt.zeta(7, 2)
    r = build_rep(lam, Q(3), Q(1))
    x = r.A.trace()
    for n in range(-5, 9):
        pr = cheb_pair(n)
        c, d = pr.c(x), pr.d(x)
        expected = Mat2(c * r.A.a + d, c * r.A.b, c * r.A.c, c * r.A.d + d)
        assert r.A**n == expected


def test_enumerate_gamma2():
    pts = enumerate_points(GAMMA2)
    m9 = [p for p in pts if 9 in p.tags and not p.reducible]
    assert len(m9) == 1
    p = m9[0]
    assert p.lam.order == 8 and p.mu.order == 3
    x = p.x.value
    assert p.z == -x.inverse()
    assert p.y.value == -1
    summ = summarize(pts)
    assert not summ.nonempty[10]


def test_enumerate_dim2_family():
    p = GroupPresentation(2, 3, -2, -3)
    summ = summarize(enumerate_points(p))
    assert summ.free_lines[1]
    assert {i for i, v in summ.nonempty.items() if v} == {1, 5, 7, 9, 10}


def test_order_limit():
    assert default_orders([2, -2]) == [1, 2, 4]
    with pytest.raises(OracleError):
        default_orders([72], max_order=12)


def test_root_of_unity_powers():
    r = RootOfUnity.of(12, 5)
    assert r.power(12).is_pm_one() and r.power(6).element() == -1
