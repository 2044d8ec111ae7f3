"""Emptiness, dimension and point structure of the ten components over Q-bar.

Two independent routes are computed for every component and compared:

* the closed-form case analysis in terms of condition C (``formula_dim``);
* an explicit description of V(p_i^e) as a union of pieces (points,
  vertical lines in z, curves, surfaces) obtained from the specialized
  generators: the x-only and y-only generators cut out finite sets of
  root-of-unity traces, and the single z-generator of components 9 and 10
  is linear in z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from flint import fmpq_poly

from .chebyshev import cheb_pair
from .components import MAX_GRAPH_EDGES, specialized_component
from .cyclo import CycloElt, RootOfUnity, RootTrace, traces_of_order_dividing, units_mod
from .mpoly import VAR_INDEX, MPoly
from .oracle import pair_orbit_key
from .trace_algebra import GroupPresentation, red_value

EMPTY = "empty"

# condition C


def nu2(n: int) -> int:
    n = abs(n)
    if n == 0:
        raise ValueError("2-adic valuation of 0")
    return (n & -n).bit_length() - 1


def _check_signs(*signs):
    for s in signs:
        if s not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {s}")


def condition_C_definition(n1: int, n2: int, s1: int, s2: int) -> bool:
    g = gcd(n1, n2)
    if g > 1 and s1 == (-1) ** ((n1 // g) % 2) and s2 == (-1) ** ((n2 // g) % 2):
        return True
    return g > 2 and s1 == 1 and s2 == 1


def condition_C_2adic(n1: int, n2: int, s1: int, s2: int) -> bool:
    g = gcd(n1, n2)
    if (s1, s2) == (1, 1):
        return g > 2
    if g <= 1:
        return False
    a, b = nu2(n1), nu2(n2)
    if (s1, s2) == (-1, 1):
        return a < b
    if (s1, s2) == (1, -1):
        return a > b
    return a == b


def condition_C(n1: int, n2: int, s1: int, s2: int) -> bool:
    """C(n1, n2, s1, s2) for nonzero exponents, checked two ways."""
    if n1 == 0 or n2 == 0:
        raise ValueError("condition C needs nonzero exponents")
    _check_signs(s1, s2)
    a = condition_C_definition(n1, n2, s1, s2)
    b = condition_C_2adic(n1, n2, s1, s2)
    if a != b:
        raise AssertionError(f"condition C disagrees with its 2-adic form at {(n1, n2, s1, s2)}")
    return a


def condition_C_general(n1: int, n2: int, s1: int, s2: int) -> bool:
    """Solvability of A^n1 =nt s1, A^n2 =nt s2 allowing zero exponents.

    A^0 =nt I is vacuous and A^0 =nt -I is unsatisfiable; a single
    remaining condition A^n =nt s is C(n, n, s, s).
    """
    _check_signs(s1, s2)
    conds = []
    for n, s in ((n1, s1), (n2, s2)):
        if n == 0:
            if s == -1:
                return False
            continue
        conds.append((n, s))
    if not conds:
        return True
    if len(conds) == 1:
        (n, s), = conds
        return condition_C(n, n, s, s)
    return condition_C(conds[0][0], conds[1][0], conds[0][1], conds[1][1])


def _divides(d: int, n: int) -> bool:
    return n == 0 if d == 0 else n % d == 0


# nontrivial power conditions


@dataclass(frozen=True)
class NontrivialPowerCondition:
    """A^n =nt s I: c_n(tr A) = 0 and d_n(tr A) = s."""

    exponent: int
    sign: int

    def __post_init__(self):
        _check_signs(self.sign)

    def holds_at(self, x) -> bool:
        if self.exponent == 0:
            return self.sign == 1
        pair = cheb_pair(self.exponent)
        return _is_zero(pair.c(x)) and _is_zero(pair.d(x) - self.sign)


@dataclass
class PowerSolution:
    solvable: bool
    free: bool
    witnesses: list  # RootTrace, one per trace value
    by_condition_C: bool

    def to_json(self) -> dict:
        return {
            "solvable": self.solvable,
            "free": self.free,
            "witnesses": [w.label() for w in self.witnesses],
        }


def solve_power_system(c1: NontrivialPowerCondition, c2: NontrivialPowerCondition) -> PowerSolution:
    """All traces x with both conditions, by direct search over roots of unity.

    Every solution has lambda^(2g) = 1 with g the gcd of the nonzero
    exponents, so the search is complete.  Each witness is checked on the
    Chebyshev polynomials exactly and the answer is compared with C.
    """
    expected = condition_C_general(c1.exponent, c2.exponent, c1.sign, c2.sign)
    conds = [c for c in (c1, c2) if c.exponent != 0]
    if any(c.exponent == 0 and c.sign == -1 for c in (c1, c2)):
        return PowerSolution(False, False, [], expected)
    if not conds:
        return PowerSolution(True, True, [], expected)
    g = 0
    for c in conds:
        g = gcd(g, c.exponent)
    N = 2 * g
    found = set()
    for j in range(N):
        lam = RootOfUnity.of(N, j)
        if lam.is_pm_one():
            continue
        if all((j * c.exponent) % N == (0 if c.sign == 1 else g) for c in conds):
            found.add(RootTrace.from_root(lam))
    witnesses = sorted(found)
    for w in witnesses:
        for c in conds:
            if not c.holds_at(w.value):
                raise AssertionError(f"witness {w.label()} fails {c}")
    sol = PowerSolution(bool(witnesses), False, witnesses, expected)
    if sol.solvable != expected:
        raise AssertionError(f"power system {c1}, {c2} disagrees with condition C")
    return sol


# closed-form dimensions


def formula_dim(p: GroupPresentation, i: int):
    """Dimension of V(p_i^e) over Q from the case analysis (EMPTY, 0, 1 or 2)."""
    n1, m1, n2, m2 = p.n1, p.m1, p.n2, p.m2
    if 1 <= i <= 8:
        if i >= 5:
            n1, m1, n2, m2 = m1, n1, m2, n2
            i -= 4
        signs = {1: (-1, -1), 2: (-1, 1), 3: (1, 1), 4: (1, -1)}[i]
        e = m1 + m2
        C = condition_C_general(n1, n2, *signs)
        if i in (1, 3):
            if not C or e in (1, -1, 2, -2):
                return EMPTY
            return 2 if e == 0 else 1
        if not C or e in (0, 1, -1):
            return EMPTY
        return 1
    if i == 9:
        return _formula_9(n1, m1, n2, m2)
    if i == 10:
        return _formula_9(m1, n1, m2, n2)
    raise ValueError(f"component index must be 1..10, got {i}")


def _formula_9(n1, m1, n2, m2):
    """Component 9; component 10 is the same statement with n and m exchanged."""
    s, t = n1 - n2, m1 - m2
    Cg = condition_C_general
    empty = (
        s in (0, 1, -1)
        or t in (1, -1, 2, -2)
        or (_divides(s, n1) and not Cg(m1 + m2, t, -1, 1))
        or (_divides(t, 2 * m1) and not Cg(n1 + n2, s, 1, -1))
    )
    if empty:
        return EMPTY
    one = (
        m1 == m2
        or ((Cg(n1, n2, -1, 1) or Cg(n1, n2, 1, -1)) and Cg(m1 + m2, t, -1, 1))
        or ((Cg(m1, m2, 1, 1) or Cg(m1, m2, -1, -1)) and Cg(n1 + n2, s, 1, -1))
    )
    return 1 if one else 0


# explicit structure


def _is_zero(v) -> bool:
    if isinstance(v, CycloElt):
        return v.is_zero()
    return v == 0


def _univariate(poly: MPoly, var: str) -> fmpq_poly:
    idx = VAR_INDEX[var]
    coeffs: dict[int, Fraction] = {}
    for e, c in poly.terms.items():
        if any(k for j, k in enumerate(e) if j != idx):
            raise ValueError(f"{poly} is not a polynomial in {var} alone")
        coeffs[e[idx]] = c
    if not coeffs:
        return fmpq_poly([])
    top = max(coeffs)
    return fmpq_poly([_fq(coeffs.get(k, 0)) for k in range(top + 1)])


def _fq(c):
    from flint import fmpq

    c = Fraction(c)
    return fmpq(c.numerator, c.denominator)


def _horner(poly: fmpq_poly, value):
    acc = CycloElt.rational(0)
    for c in reversed([Fraction(int(q.p), int(q.q)) for q in poly.coeffs()]):
        acc = acc * value + c
    return acc


def _common_roots(polys, candidates) -> list[RootTrace] | None:
    """Common roots among candidate traces, or None if all polys vanish.

    Completeness is certified: the number of roots found must equal the
    degree of the squarefree part of the gcd.
    """
    g = fmpq_poly([])
    for f in polys:
        g = f if g.is_zero() else (g.gcd(f) if not f.is_zero() else g)
    if g.is_zero():
        return None
    if g.degree() == 0:
        return []
    sqf = g / g.gcd(g.derivative()) if g.degree() > 1 else g
    roots = [r for r in candidates if _horner(sqf, r.value).is_zero()]
    if len(roots) != sqf.degree():
        raise AssertionError(f"found {len(roots)} roots of a degree {sqf.degree()} factor; candidates incomplete")
    return roots


def _candidates(exps) -> list[RootTrace]:
    out = set()
    for e in exps:
        if e:
            out.update(traces_of_order_dividing(4 * e))
    out.update(traces_of_order_dividing(4))
    return sorted(out)


@dataclass
class Piece:
    """One irreducible piece over Q-bar of V(p_i^e).

    kind is "point", "line" (x, y fixed, z free), "curve" (one of x, y
    fixed, the other free, z a function of it) or "surface".  None marks
    a free coordinate.
    """

    kind: str
    x: RootTrace | None
    y: RootTrace | None
    z: CycloElt | None = None
    gen_irr: bool = True

    def dim(self) -> int:
        return {"point": 0, "line": 1, "curve": 1, "surface": 2}[self.kind]

    def to_json(self) -> dict:
        out = {"kind": self.kind, "gen_irr": self.gen_irr}
        out["x"] = self.x.label() if self.x is not None else "free"
        out["y"] = self.y.label() if self.y is not None else "free"
        if self.kind == "point":
            out["z"] = self.z.to_json()
        else:
            out["z"] = "free" if self.kind in ("line", "surface") else "function"
        return out


@dataclass
class ComponentReport:
    id: int
    dim: object  # EMPTY or 0, 1, 2
    formula_dim: object
    pieces: list = field(default_factory=list)
    star_condition: bool | None = None

    @property
    def formula_agrees(self) -> bool:
        return self.dim == self.formula_dim

    @property
    def points(self) -> list[Piece]:
        return [q for q in self.pieces if q.kind == "point"]

    @property
    def gen_irr(self) -> bool:
        """M_i° nonempty: some piece has an irreducible generic point."""
        return any(q.gen_irr for q in self.pieces)

    @property
    def gen_irr_dim(self):
        dims = [q.dim() for q in self.pieces if q.gen_irr]
        return max(dims) if dims else EMPTY

    def orbits(self) -> dict:
        """Galois orbits of the pieces, keyed by the pair of trace classes."""
        out: dict = {}
        for q in self.pieces:
            out.setdefault(_piece_orbit_key(q), []).append(q)
        return out

    @property
    def orbit_count(self) -> int:
        return len(self.orbits())

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "dim": _dim_label(self.dim),
            "formula_dim": _dim_label(self.formula_dim),
            "formula_agrees": self.formula_agrees,
            "gen_irr": self.gen_irr,
            "gen_irr_dim": _dim_label(self.gen_irr_dim),
            "star_condition": self.star_condition,
            "orbit_count": self.orbit_count,
            "point_count": len(self.points),
            "points": [q.to_json() for q in self.points],
            "pieces": [q.to_json() for q in self.pieces if q.kind != "point"],
        }


def _dim_label(d) -> str:
    return EMPTY if d == EMPTY else str(d)


def _piece_orbit_key(q: Piece):
    if q.x is not None and q.y is not None:
        return (q.kind,) + pair_orbit_key(q.x.order, q.x.exponent, q.y.order, q.y.exponent)
    r = q.x if q.x is not None else q.y
    side = "x" if q.x is not None else "y"
    if r is None:
        return (q.kind,)
    return (q.kind, side, pair_orbit_key(r.order, r.exponent, 1, 0)[0])


class _Context:
    """Per-presentation caches: specialized generators and candidate traces."""

    def __init__(self, p: GroupPresentation):
        self.p = p
        self.x_cands = _candidates([p.n1, p.n2, p.n1 + p.n2, p.n1 - p.n2])
        self.y_cands = _candidates([p.m1, p.m2, p.m1 + p.m2, p.m1 - p.m2])
        self._gens: dict = {}
        self._cd: dict = {}

    def generators(self, i: int) -> list[MPoly]:
        if i not in self._gens:
            self._gens[i] = [g for g in specialized_component(self.p, i).generators if not g.is_zero()]
        return self._gens[i]

    def cd(self, e: int, r: RootTrace):
        key = (e, r)
        if key not in self._cd:
            pair = cheb_pair(e)
            self._cd[key] = (pair.c(r.value), pair.d(r.value))
        return self._cd[key]

    def split(self, i: int):
        """x-only, y-only and remaining generators of p_i^e, or None for the unit ideal."""
        xs, ys, rest = [], [], []
        for g in self.generators(i):
            v = g.variables()
            if not v:
                # a nonzero constant: the specialized ideal is the unit ideal
                return None
            if v <= {"x"}:
                xs.append(g)
            elif v <= {"y"}:
                ys.append(g)
            else:
                rest.append(g)
        return xs, ys, rest

    def side_roots(self, gens, var):
        polys = [_univariate(g, var) for g in gens]
        if any(f.degree() == 0 for f in polys):
            return []
        return _common_roots(polys, self.x_cands if var == "x" else self.y_cands)


def _structure_1_8(ctx: _Context, i: int) -> list[Piece]:
    parts = ctx.split(i)
    if parts is None:
        return []
    xs, ys, rest = parts
    if rest:
        raise AssertionError(f"component {i} has a generator involving z or both x and y")
    X = ctx.side_roots(xs, "x")
    Y = ctx.side_roots(ys, "y")
    if X == [] or Y == []:
        return []
    if X is None and Y is None:
        return [Piece("surface", None, None)]
    pieces = []
    if X is None:
        return [Piece("surface", None, y) for y in Y]
    if Y is None:
        return [Piece("surface", x, None) for x in X]
    for x in X:
        for y in Y:
            # red restricted to a line is a monic quadratic in z, so never zero
            pieces.append(Piece("line", x, y))
    return pieces


def _t_value(p: GroupPresentation, cx, dx, cy, dy, xv, yv):
    """(coefficient of z, constant term) of tr A^n1 B^m1."""
    return cx * cy, xv * cx * dy + yv * dx * cy + 2 * dx * dy


def _curve_gen_irr(p: GroupPresentation, x: RootTrace, ctx: _Context, swap: bool) -> bool:
    """Sample the curve z = z(y) at rationals; red vanishing everywhere would
    need it to vanish at more points than its degree allows."""
    n1, m1 = (p.m1, p.n1) if swap else (p.n1, p.m1)
    cx, dx = ctx.cd(n1, x)
    xv = x.value
    pair = cheb_pair(m1)
    bound = 4 * (abs(m1) + 2) + 4
    tried = 0
    for k in range(3, 3 + 10 * bound):
        yv = CycloElt.rational(k)
        cy, dy = pair.c(yv), pair.d(yv)
        a, b = _t_value(p, cx, dx, cy, dy, xv, yv)
        if _is_zero(a):
            continue
        z = -b / a
        tried += 1
        if not _is_zero(red_value(xv, yv, z)):
            return True
        if tried > bound:
            return False
    return False


def _structure_9(ctx: _Context, swap: bool) -> list[Piece]:
    """Pieces of component 9, or of component 10 when swap is set.

    For 10 the roles of (x, n) and (y, m) are exchanged; the z-generator is
    symmetric under that exchange.
    """
    p = ctx.p
    i = 10 if swap else 9
    parts = ctx.split(i)
    if parts is None:
        return []
    xs, ys, rest = parts
    # with m1 = 0 the z-generator loses z and joins the one-variable constraints
    if len(rest) > 1:
        raise AssertionError(f"component {i} should have at most one generator in several variables")
    A_gens, B_gens, A_var, B_var = (ys, xs, "y", "x") if swap else (xs, ys, "x", "y")
    n1, m1 = (p.m1, p.n1) if swap else (p.n1, p.m1)
    X = ctx.side_roots(A_gens, A_var)
    Y = ctx.side_roots(B_gens, B_var)

    def mk(kind, a, b, z=None, gi=True):
        return Piece(kind, b, a, z, gi) if swap else Piece(kind, a, b, z, gi)

    if X == [] or Y == []:
        return []
    if X is None:
        raise AssertionError("the A-side of components 9 and 10 is never free")
    pieces = []
    for x in X:
        cx, dx = ctx.cd(n1, x)
        xv = x.value
        if Y is not None:
            for y in Y:
                cy, dy = ctx.cd(m1, y)
                a, b = _t_value(p, cx, dx, cy, dy, xv, y.value)
                if not _is_zero(a):
                    z = (-b / a).canonical()
                    pieces.append(mk("point", x, y, z, not _is_zero(red_value(xv, y.value, z))))
                elif _is_zero(b):
                    pieces.append(mk("line", x, y))
            continue
        # B-side free: happens exactly when m1 = m2
        if m1 == 0:
            if _is_zero(xv * cx + 2 * dx):
                pieces.append(mk("surface", x, None))
            continue
        if not _is_zero(cx):
            pieces.append(mk("curve", x, None, None, _curve_gen_irr(p, x, ctx, swap)))
            # vertical lines over the poles of z(y), where c_m1(y) = 0
            if _is_zero(xv * cx + 2 * dx):
                for y in cheb_root_set(m1, ctx):
                    pieces.append(mk("line", x, y))
        else:
            # T = d_n1(x) tr B^m1, lines where tr B^m1 vanishes
            pair = cheb_pair(m1)
            tr_poly = fmpq_poly([int(c) for c in pair.d.coeffs]) * 2 + fmpq_poly([0, 1]) * fmpq_poly(
                [int(c) for c in pair.c.coeffs]
            )
            for y in _common_roots([tr_poly], _candidates([4 * m1])) or []:
                pieces.append(mk("line", x, y))
    return pieces


def cheb_root_set(m: int, ctx: _Context) -> list[RootTrace]:
    pair = cheb_pair(m)
    return _common_roots([fmpq_poly([int(c) for c in pair.c.coeffs])], _candidates([m])) or []


def _dimension_of(pieces) -> object:
    return max((q.dim() for q in pieces), default=EMPTY)


def classify(p: GroupPresentation, i: int, ctx: _Context | None = None) -> ComponentReport:
    if not 1 <= i <= 10:
        raise ValueError(f"component index must be 1..10, got {i}")
    ctx = ctx or _Context(p)
    if i <= 8:
        pieces = _structure_1_8(ctx, i)
        star = None
    else:
        pieces = _structure_9(ctx, swap=(i == 10))
        star = (p.m1 != p.m2) if i == 9 else (p.n1 != p.n2)
    pieces.sort(key=_piece_sort_key)
    return ComponentReport(i, _dimension_of(pieces), formula_dim(p, i), pieces, star)


def _piece_sort_key(q: Piece):
    return (q.kind, q.x or RootTrace(0, 0), q.y or RootTrace(0, 0))


def classify_all(p: GroupPresentation) -> list[ComponentReport]:
    ctx = _Context(p)
    return [classify(p, i, ctx) for i in range(1, 11)]


# intersections

_SAMPLES = (3, 5, 7)


def _z_options(q: Piece, p: GroupPresentation, x: RootTrace | CycloElt, y, i: int):
    """Allowed z over a fixed (x, y): "all", a set of values, or empty."""
    xv = x.value if isinstance(x, RootTrace) else x
    yv = y.value if isinstance(y, RootTrace) else y
    if q.x is not None and (not isinstance(x, RootTrace) or q.x != x):
        return set()
    if q.y is not None and (not isinstance(y, RootTrace) or q.y != y):
        return set()
    if q.kind in ("line", "surface"):
        return "all"
    if q.kind == "point":
        return {q.z}
    # curve: evaluate z at the free coordinate
    n1, m1 = p.n1, p.m1
    cx, dx = cheb_pair(n1).c(xv), cheb_pair(n1).d(xv)
    cy, dy = cheb_pair(m1).c(yv), cheb_pair(m1).d(yv)
    a, b = _t_value(p, cx, dx, cy, dy, xv, yv)
    if _is_zero(a):
        return set() if not _is_zero(b) else "all"
    return {(-b / a).canonical()}


def _pieces_meet(p: GroupPresentation, q1: Piece, q2: Piece) -> bool:
    xs = [r for r in (q1.x, q2.x) if r is not None]
    ys = [r for r in (q1.y, q2.y) if r is not None]
    if len(set(xs)) > 1 or len(set(ys)) > 1:
        return False
    x_opts = xs[:1] or [CycloElt.rational(k) for k in _SAMPLES]
    y_opts = ys[:1] or [CycloElt.rational(k) for k in _SAMPLES]
    for x in x_opts:
        for y in y_opts:
            a = _z_options(q1, p, x, y, 0)
            b = _z_options(q2, p, x, y, 0)
            if not a or not b:
                continue
            if a == "all" or b == "all" or (a & b):
                return True
    return False


@dataclass
class IntersectionGraph:
    nodes: list[int]
    edges: list[tuple[int, int]]

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "edges": [list(e) for e in self.edges]}


def intersection_graph(p: GroupPresentation, reports: list[ComponentReport] | None = None) -> IntersectionGraph:
    """Nonempty M_i° and the pairs that share a point; must sit inside the
    maximal graph."""
    reports = reports or classify_all(p)
    by_id = {r.id: r for r in reports}
    nodes = sorted(r.id for r in reports if r.gen_irr)
    edges = []
    for a in nodes:
        for b in nodes:
            if a >= b:
                continue
            pa = [q for q in by_id[a].pieces if q.gen_irr]
            pb = [q for q in by_id[b].pieces if q.gen_irr]
            if any(_pieces_meet(p, q1, q2) for q1 in pa for q2 in pb):
                edges.append((a, b))
    for e in edges:
        if frozenset(e) not in MAX_GRAPH_EDGES:
            raise AssertionError(f"components {e} meet but are not joined in the maximal graph")
    return IntersectionGraph(nodes, edges)


def galois_orbit_of_point(q: Piece) -> list[tuple[RootTrace, RootTrace]]:
    L = q.x.order * q.y.order // gcd(q.x.order, q.y.order)
    return sorted({(q.x.galois(u), q.y.galois(u)) for u in units_mod(L)})


def compare_with_oracle(p: GroupPresentation, max_order: int | None = None, reports=None) -> list[tuple]:
    """Discrepancies between the structural report and brute-force enumeration.

    Compares emptiness of every V(p_i^e) and, for dimension 0, the full set
    of geometric (x, y) points together with z at each orbit representative.
    """
    from .oracle import enumerate_points, summarize

    reports = reports or classify_all(p)
    summ = summarize(enumerate_points(p, max_order=max_order))
    bad = []
    for r in reports:
        if (r.dim != EMPTY) != summ.nonempty[r.id]:
            bad.append(("nonempty", r.id, _dim_label(r.dim), summ.nonempty[r.id]))
        if r.dim == 0:
            mine = {(q.x, q.y): q.z for q in r.points}
            found = summ.isolated[r.id]
            if set(mine) != set(found):
                bad.append(("points", r.id, len(mine), len(found)))
                continue
            for xy, z in found.items():
                if z is not None and mine[xy] != z:
                    bad.append(("z", r.id, xy[0].label(), xy[1].label()))
    return bad
