"""Brute force ground truth from explicit 2x2 matrices over cyclotomic fields.

Nothing here uses the component tables or the dimension formulas.  Points
are found by writing A, B in a triangular normal form with prescribed
eigenvalues and solving the group relation for the one remaining entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclo import CycloElt, RootOfUnity, RootTrace, units_mod
from .trace_algebra import GroupPresentation, Word


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class Mat2:
    a: CycloElt
    b: CycloElt
    c: CycloElt
    d: CycloElt

    @classmethod
    def identity(cls) -> Mat2:
        one, zero = CycloElt.rational(1), CycloElt.rational(0)
        return cls(one, zero, zero, one)

    def __mul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def det(self) -> CycloElt:
        return self.a * self.d - self.b * self.c

    def trace(self) -> CycloElt:
        return self.a + self.d

    def inverse(self) -> Mat2:
        det = self.det()
        if det.is_zero():
            raise ZeroDivisionError("singular matrix")
        if det == 1:
            return Mat2(self.d, -self.b, -self.c, self.a)
        r = det.inverse()
        return Mat2(self.d * r, -self.b * r, -self.c * r, self.a * r)

    def __pow__(self, e: int) -> Mat2:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Mat2.identity()
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __sub__(self, o: Mat2) -> Mat2:
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def entries(self) -> tuple[CycloElt, ...]:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        return self.a == 1 and self.d == 1 and self.b.is_zero() and self.c.is_zero()


@dataclass(frozen=True)
class SL2Rep:
    A: Mat2
    B: Mat2
    lam: CycloElt | None = None
    mu: CycloElt | None = None

    def image(self, w: Word) -> Mat2:
        m = Mat2.identity()
        for g, e in w.syllables:
            m = m * ((self.A if g == "a" else self.B) ** e)
        return m


def build_rep(lam, mu, z) -> SL2Rep:
    """A = [[lam, 1], [0, 1/lam]], B = [[mu, 0], [kappa, 1/mu]] with
    kappa = z - lam mu - 1/(lam mu), so that tr AB = z."""
    lam, mu, z = (CycloElt._coerce(v) for v in (lam, mu, z))
    if lam.is_zero() or mu.is_zero():
        raise ValueError("eigenvalues must be invertible")
    li, mi = lam.inverse(), mu.inverse()
    kappa = z - lam * mu - li * mi
    one, zero = CycloElt.rational(1), CycloElt.rational(0)
    return SL2Rep(Mat2(lam, one, zero, li), Mat2(mu, zero, kappa, mi), lam, mu)


def check_word(r: SL2Rep, w: Word) -> bool:
    return r.image(w).is_identity()


def trace_of_word(r: SL2Rep, w: Word) -> CycloElt:
    return r.image(w).trace()


def _parallel(v, w) -> bool:
    return (v[0] * w[1] - v[1] * w[0]).is_zero()


def has_common_eigenvector(r: SL2Rep) -> bool:
    """Exact test on a triangular rep from build_rep (eigenvalues of A known)."""
    if r.lam is None:
        raise ValueError("need a representation built by build_rep")
    A, B = r.A, r.B
    vecs = [(CycloElt.rational(1), CycloElt.rational(0))]
    li = r.lam.inverse()
    if r.lam != li:
        # kernel of A - 1/lam: (A.b, 1/lam - A.a)
        vecs.append((A.b, li - A.a))
    for v in vecs:
        Bv = (B.a * v[0] + B.b * v[1], B.c * v[0] + B.d * v[1])
        if _parallel(v, Bv):
            return True
    return False


# polynomials in kappa over a cyclotomic field, as coefficient lists


def _trim(p):
    while p and p[-1].is_zero():
        p = p[:-1]
    return p


def _pmod(a, b):
    a = list(a)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        q = a[-1] * inv
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - q * c
        a = _trim(a[:-1])
    return a


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b)
    return a


def _peval(p, k):
    acc = CycloElt.rational(0)
    for c in reversed(p):
        acc = acc * k + c
    return acc


def _pdiv_linear(p, r):
    """p / (kappa - r) for a root r."""
    out = [None] * (len(p) - 1)
    carry = p[-1]
    out[-1] = carry
    for i in range(len(p) - 2, 0, -1):
        carry = p[i] + carry * r
        out[i - 1] = carry
    return out


@dataclass(frozen=True)
class OraclePoint:
    """A solution of the group relation, tagged by the vanishing components.

    z is None when every z works for this (x, y) (a line in z).
    """

    lam: RootOfUnity
    mu: RootOfUnity
    z: CycloElt | None
    tags: frozenset
    reducible: bool

    @property
    def x(self) -> RootTrace:
        return RootTrace.from_root(self.lam)

    @property
    def y(self) -> RootTrace:
        return RootTrace.from_root(self.mu)


def divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def default_orders(exps: list[int], max_order: int | None = None) -> list[int]:
    """Orders dividing 2|e| for the given exponents (zeros skipped)."""
    out = set()
    for e in exps:
        if e:
            out.update(divisors(2 * e))
    if not out:
        out = {1, 2}
    if max_order is not None:
        if max(out) > max_order:
            raise OracleError(f"root of unity order {max(out)} exceeds the limit {max_order}")
    return sorted(out)


def _roots_of_orders(orders) -> list[RootOfUnity]:
    """One root per inverse pair for every listed exact order."""
    out = []
    for o in orders:
        for k in range(o):
            if gcd(k, o) == 1 and (o <= 2 or k <= o - k):
                out.append(RootOfUnity.of(o, k))
    return out


@lru_cache(maxsize=None)
def pair_orbit_key(o1: int, e1: int, o2: int, e2: int):
    """Canonical representative of the Galois orbit of a pair of trace classes."""
    L = o1 * o2 // gcd(o1, o2)
    best = None
    for u in units_mod(L):
        k = (RootTrace.of(o1, e1 * u), RootTrace.of(o2, e2 * u))
        if best is None or k < best:
            best = k
    return best


def pair_orbit(x: RootTrace, y: RootTrace) -> set:
    L = x.order * y.order // gcd(x.order, y.order)
    return {(x.galois(u), y.galois(u)) for u in units_mod(L)}


class _Solver:
    def __init__(self, p: GroupPresentation):
        self.p = p
        self._apow: dict = {}

    def a_powers(self, lam: RootOfUnity):
        if lam not in self._apow:
            le = lam.element()
            A = Mat2(le, CycloElt.rational(1), CycloElt.rational(0), le.inverse())
            self._apow[lam] = (A, A ** self.p.n1, A ** self.p.n2)
        return self._apow[lam]

    def solve(self, lam: RootOfUnity, mu: RootOfUnity):
        """Return ("all", None) or ("roots", [kappa...]) for W(kappa) = I."""
        p = self.p
        _, An1, An2 = self.a_powers(lam)
        me = mu.element()
        mi = me.inverse()
        vals = []
        for k in (0, 1, 2):
            B = Mat2(me, CycloElt.rational(0), CycloElt.rational(k), mi)
            W = An1 * (B ** p.m1) * An2 * (B ** p.m2)
            vals.append((W - Mat2.identity()).entries())
        polys = []
        for idx in range(4):
            f0, f1, f2 = (v[idx] for v in vals)
            a2 = (f2 - f1 * 2 + f0) * Fraction(1, 2)
            a1 = f1 - f0 - a2
            polys.append(_trim([f0, a1, a2]))
        g = []
        for f in polys:
            g = _pgcd(g, f) if g else _trim(f)
        if not g:
            return "all", None
        if len(g) == 1:
            return "roots", []
        if len(g) == 2:
            return "roots", [-(g[0] / g[1])]
        # degree 2: peel off the reducible roots 0 and (1/lam - lam)(mu - 1/mu)
        le = lam.element()
        k_red = (le.inverse() - le) * (me - mi)
        for cand in (CycloElt.rational(0), k_red):
            if _peval(g, cand).is_zero():
                rest = _pdiv_linear(g, cand)
                other = -(rest[0] / rest[1])
                return "roots", sorted({cand, other}, key=lambda c: str(c.to_json()))
        raise OracleError(f"quadratic in kappa without a reducible root at lam={lam}, mu={mu}")


def solve_z(p: GroupPresentation, lam: RootOfUnity, mu: RootOfUnity) -> list[CycloElt] | None:
    """Every z for which the lift at (lam, mu, z) satisfies the relation,
    found by interpolating the relation matrix in kappa; None if all z do."""
    kind, roots = _Solver(p).solve(lam, mu)
    if kind == "all":
        return None
    le, me = lam.element(), mu.element()
    base = le * me + (le * me).inverse()
    return [(k + base).canonical() for k in roots]


def _cd_from_matrices(M: Mat2, Mn: Mat2, ev: CycloElt, upper: bool):
    """Read c_n, d_n off M^n = c_n M + d_n I for triangular M with off-diagonal 1."""
    c = Mn.b if upper else Mn.c
    d = Mn.a - c * ev
    return c, d


def enumerate_points(
    p: GroupPresentation,
    lam_orders=None,
    mu_orders=None,
    max_order: int | None = None,
    z_samples=(0, 1, 3),
) -> list[OraclePoint]:
    """Solve the relation on Galois orbit representatives of (lam, mu) pairs.

    Orders default to all divisors of 2|e| for e in n1, n2, n1 +- n2 (resp.
    the m's).  Each returned point is tagged with the components whose
    specialized generators vanish there.
    """
    from .components import component_ideal

    if lam_orders is None:
        lam_orders = default_orders([p.n1, p.n2, p.n1 + p.n2, p.n1 - p.n2], max_order)
    if mu_orders is None:
        mu_orders = default_orders([p.m1, p.m2, p.m1 + p.m2, p.m1 - p.m2], max_order)
    lams, mus = _roots_of_orders(lam_orders), _roots_of_orders(mu_orders)
    comps = [(i, component_ideal(i).generators) for i in range(1, 11)]
    solver = _Solver(p)
    seen = set()
    out = []
    for lam in lams:
        for mu in mus:
            key = pair_orbit_key(lam.order, lam.exponent, mu.order, mu.exponent)
            if key in seen:
                continue
            seen.add(key)
            kind, roots = solver.solve(lam, mu)
            le, me = lam.element(), mu.element()
            base = le * me + (le * me).inverse()
            if kind == "all":
                zs = [(CycloElt.rational(s), True) for s in z_samples]
            else:
                zs = [(k + base, False) for k in roots]
            vals = _gamma_delta_values(solver, lam, mu)
            x = le + le.inverse()
            y = me + me.inverse()
            for z, free in zs:
                rep = build_rep(le, me, z)
                if not check_word(rep, p.word()):
                    raise OracleError("solved point fails the relation")
                env = dict(vals, x=x, y=y, z=z)
                tags = frozenset(i for i, gens in comps if all(_is_zero(g.evaluate(env)) for g in gens))
                out.append(OraclePoint(lam, mu, None if free else z, tags, has_common_eigenvector(rep)))
    return out


def _is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, CycloElt) else v == 0


def _gamma_delta_values(solver: _Solver, lam: RootOfUnity, mu: RootOfUnity) -> dict:
    p = solver.p
    A, An1, An2 = solver.a_powers(lam)
    le, me = lam.element(), mu.element()
    B = Mat2(me, CycloElt.rational(0), CycloElt.rational(1), me.inverse())
    out = {}
    for name, M, e, ev, upper in (
        ("n1", A, p.n1, le, True),
        ("n2", A, p.n2, le, True),
        ("m1", B, p.m1, me, False),
        ("m2", B, p.m2, me, False),
    ):
        Mn = An1 if name == "n1" else An2 if name == "n2" else M ** e
        c, d = _cd_from_matrices(M, Mn, ev, upper)
        out["g_" + name], out["d_" + name] = c, d
    return out


@dataclass
class OracleSummary:
    """Per-component view of enumerate_points output."""

    nonempty: dict
    isolated: dict  # component -> {(x, y): z} over all geometric points
    free_lines: dict  # component -> set of (x, y) where z is free


def summarize(points: list[OraclePoint]) -> OracleSummary:
    nonempty = {i: False for i in range(1, 11)}
    isolated = {i: {} for i in range(1, 11)}
    free = {i: set() for i in range(1, 11)}
    for pt in points:
        for i in pt.tags:
            nonempty[i] = True
            if pt.z is None:
                for xy in pair_orbit(pt.x, pt.y):
                    free[i].add(xy)
            else:
                # conjugate points share the orbit; z is recorded at the representative
                for xy in pair_orbit(pt.x, pt.y):
                    isolated[i].setdefault(xy, None)
                isolated[i][(pt.x, pt.y)] = pt.z
    return OracleSummary(nonempty, isolated, free)


# trace algebra versus explicit matrices


def random_rational_sl2(rng, steps: int = 3, height: int = 5) -> Mat2:
    """Product of random elementary and diagonal matrices with rational entries."""
    one, zero = CycloElt.rational(1), CycloElt.rational(0)
    m = Mat2.identity()
    for _ in range(steps):
        a = CycloElt.rational(Fraction(rng.randint(-height, height), rng.randint(1, height)))
        r = Fraction(rng.choice([-1, 1]) * rng.randint(1, height), rng.randint(1, height))
        m = m * Mat2(one, a, zero, one)
        m = m * Mat2(one, zero, a + 1, one)
        m = m * Mat2(CycloElt.rational(r), zero, zero, CycloElt.rational(1 / r))
    return m


def random_word(rng, max_len: int = 8) -> Word:
    n = rng.randint(1, max_len)
    return Word.normalized([(rng.choice("ab"), rng.choice((1, -1))) for _ in range(n)])


@dataclass
class EquivalenceReport:
    count: int
    seed: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"count": self.count, "seed": self.seed, "passed": self.passed, "failures": self.failures}


def trace_algebra_equivalence(count: int = 200, seed: int = 0, max_len: int = 8) -> EquivalenceReport:
    """Expand random words in the basis 1, a, b, ab with x, y, z the traces of
    random rational matrices, and compare c1 I + ca A + cb B + cab AB with
    the matrix product entry by entry."""
    import random

    from .trace_algebra import TraceAlgebra

    rng = random.Random(seed)
    failures = []
    for k in range(count):
        A, B = random_rational_sl2(rng), random_rational_sl2(rng)
        if A.det() != 1 or B.det() != 1:
            raise OracleError("random matrix left SL2")
        AB = A * B
        alg = TraceAlgebra(A.trace(), B.trace(), AB.trace(), CycloElt.rational(1), CycloElt.rational(0))
        w = random_word(rng, max_len)
        v = alg.expand(w)
        c1, ca, cb, cab = (CycloElt._coerce(c) for c in v.coeffs())
        I = Mat2.identity()
        predicted = Mat2(
            *(c1 * i + ca * a + cb * b + cab * ab for i, a, b, ab in zip(I.entries(), A.entries(), B.entries(), AB.entries()))
        )
        actual = SL2Rep(A, B).image(w)
        if predicted != actual:
            failures.append({"index": k, "word": str(w)})
        elif v.trace() != actual.trace():
            failures.append({"index": k, "word": str(w), "what": "trace"})
    return EquivalenceReport(count, seed, failures)
