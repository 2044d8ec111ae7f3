"""Cyclotomic points of components 9 and 10 and (2,1)-weak integrality.

Points of M_9 are parametrized by roots lam, mu with lam^s = -1 and
mu^t = 1 (s = n1 - n2, t = m1 - m2, neither root equal to +-1); M_10 swaps
the signs.  z is computed from the eigenvalue formula

    z = [n1+1]_lam [m1-1]_mu / ([n1]_lam [m1]_mu)
      + [m1+1]_mu [n1-1]_lam / ([m1]_mu [n1]_lam),

with [k]_q = q^k - q^-k, which is independent of the Chebyshev based
classifier.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .classifier import EMPTY, ComponentReport, classify_all
from .components import specialized_component
from .cyclo import (
    CycloElt,
    RootOfUnity,
    RootTrace,
    ValuationReport,
    euler_phi,
    is_prime,
    norm_valuation,
    prime_factors,
    valuations_above,
)
from .oracle import pair_orbit_key
from .trace_algebra import GroupPresentation, red_value

# points in the eigenvalue parametrization


def _bracket(q: CycloElt, k: int) -> CycloElt:
    return q ** k - q ** (-k)


def eigen_z(lam: CycloElt, mu: CycloElt, n1: int, m1: int) -> CycloElt | None:
    """z from eigenvalues; None when lam^n1 or mu^m1 is +-1 (z is then free)."""
    dl, dm = _bracket(lam, n1), _bracket(mu, m1)
    if dl.is_zero() or dm.is_zero():
        return None
    first = _bracket(lam, n1 + 1) * _bracket(mu, m1 - 1)
    second = _bracket(mu, m1 + 1) * _bracket(lam, n1 - 1)
    return ((first + second) / (dl * dm)).canonical()


@dataclass
class CyclotomicPoint:
    """A point of M_9 (or M_10) in the eigenvalue parametrization."""

    component: int
    lam: RootOfUnity
    mu: RootOfUnity
    x: CycloElt
    y: CycloElt
    z: CycloElt
    orbit: tuple = ()
    valuations: dict = field(default_factory=dict)

    @property
    def x_trace(self) -> RootTrace:
        return RootTrace.from_root(self.lam)

    @property
    def y_trace(self) -> RootTrace:
        return RootTrace.from_root(self.mu)

    def red(self) -> CycloElt:
        return red_value(self.x, self.y, self.z)

    def to_json(self) -> dict:
        return {
            "component": self.component,
            "lambda": self.lam.label(),
            "mu": self.mu.label(),
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "z": self.z.to_json(),
            "valuations": {str(k): v.to_json() for k, v in sorted(self.valuations.items())},
        }


M9Point = CyclotomicPoint


def _roots_with_power(s: int, sign: int) -> list[RootOfUnity]:
    """lam != +-1 with lam^s = sign, one per inverse pair."""
    N = 2 * abs(s)
    out = set()
    for j in range(N):
        if (j * s) % N != (0 if sign == 1 else abs(s)):
            continue
        r = RootOfUnity.of(N, j)
        if r.is_pm_one():
            continue
        out.add(min(r, r.inverse()))
    return sorted(out)


def _points(p: GroupPresentation, component: int) -> list[CyclotomicPoint]:
    s, t = p.s, p.t
    sign_s, sign_t = (-1, 1) if component == 9 else (1, -1)
    if s == 0 or t == 0:
        # one side is unconstrained: not a finite set of points
        return []
    lams, mus = _roots_with_power(s, sign_s), _roots_with_power(t, sign_t)
    out = []
    seen = set()
    for lam in lams:
        le = lam.element()
        for mu in mus:
            me = mu.element()
            z = eigen_z(le, me, p.n1, p.m1)
            if z is None:
                continue
            xt, yt = RootTrace.from_root(lam), RootTrace.from_root(mu)
            if (xt, yt) in seen:
                continue
            seen.add((xt, yt))
            key = pair_orbit_key(xt.order, xt.exponent, yt.order, yt.exponent)
            out.append(CyclotomicPoint(component, lam, mu, xt.value, yt.value, z, key))
    return out


def m9_points(p: GroupPresentation) -> list[CyclotomicPoint]:
    """Geometric points of M_9 with c_n1(x) c_m1(y) != 0, one per (x, y)."""
    return _points(p, 9)


def m10_points(p: GroupPresentation) -> list[CyclotomicPoint]:
    return _points(p, 10)


def orbit_representatives(points: list[CyclotomicPoint]) -> list[CyclotomicPoint]:
    reps = {}
    for q in points:
        reps.setdefault(q.orbit, q)
    return [reps[k] for k in sorted(reps)]


def satisfies_component(q: CyclotomicPoint, p: GroupPresentation) -> bool:
    """Every generator of the specialized ideal vanishes at the point."""
    env = {"x": q.x, "y": q.y, "z": q.z}
    for g in specialized_component(p, q.component).generators:
        v = g.evaluate(env)
        if not (v.is_zero() if isinstance(v, CycloElt) else v == 0):
            return False
    return True


# weak integrality


def _slopes(z: CycloElt, ell: int) -> ValuationReport:
    if z.is_zero():
        return ValuationReport(ell, (Fraction(1),))
    return valuations_above(z, ell)


@dataclass
class WeakIntegralityVerdict:
    """Primes at which no absolutely irreducible rep into Z-bar_ell exists.

    all_primes_fail is set when there are no absolutely irreducible
    characters at all; undetermined lists reasons when a positive
    dimensional piece had no integral witness in the search.
    """

    presentation: GroupPresentation
    failing_primes: list[int]
    all_primes_fail: bool = False
    reason: str = ""
    certificates: dict = field(default_factory=dict)
    integral_primes_checked: dict = field(default_factory=dict)
    undetermined: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation.to_json(),
            "failing_primes": self.failing_primes,
            "all_primes_fail": self.all_primes_fail,
            "reason": self.reason,
            "certificates": {str(k): v for k, v in sorted(self.certificates.items())},
            "integral_primes_checked": {str(k): v for k, v in sorted(self.integral_primes_checked.items())},
            "undetermined": self.undetermined,
        }


def _integral_z_on_line(x: CycloElt, y: CycloElt) -> int:
    for z in range(0, 10):
        if not red_value(x, y, CycloElt.rational(z)).is_zero():
            return z
    raise AssertionError("red vanishes at ten integers on a line")


def _curve_witness(p: GroupPresentation, report: ComponentReport, piece) -> dict | None:
    """Integral point with red != 0 on a curve piece (one of x, y free)."""
    from .chebyshev import cheb_pair

    for order in range(1, 25):
        for k in range(order):
            if gcd(k, order) != 1:
                continue
            free = RootTrace.of(order, k)
            x = piece.x if piece.x is not None else free
            y = piece.y if piece.y is not None else free
            xv, yv = x.value, y.value
            cx, dx = cheb_pair(p.n1).c(xv), cheb_pair(p.n1).d(xv)
            cy, dy = cheb_pair(p.m1).c(yv), cheb_pair(p.m1).d(yv)
            a = cx * cy
            if a.is_zero():
                continue
            z = (-(xv * cx * dy + yv * dx * cy + 2 * dx * dy) / a).canonical()
            if z.is_algebraic_integer() and not red_value(xv, yv, z).is_zero():
                return {"x": x.label(), "y": y.label(), "z": z.to_json()}
    return None


def weak_integrality(p: GroupPresentation, reports: list[ComponentReport] | None = None) -> WeakIntegralityVerdict:
    reports = reports or classify_all(p)
    by_id = {r.id: r for r in reports}
    # components 1..8: every piece is a line or surface with integral x, y
    for i in range(1, 9):
        r = by_id[i]
        if r.gen_irr:
            q = next(q for q in r.pieces if q.gen_irr)
            x = q.x.value if q.x is not None else CycloElt.rational(3)
            y = q.y.value if q.y is not None else CycloElt.rational(3)
            z = _integral_z_on_line(x, y)
            return WeakIntegralityVerdict(
                p, [], reason=f"M_{i}° is nonempty of dimension {r.gen_irr_dim}; integral point with z = {z}"
            )
    undetermined = []
    points = []
    for i in (9, 10):
        r = by_id[i]
        for q in r.pieces:
            if not q.gen_irr:
                continue
            if q.kind == "line" or q.kind == "surface":
                x = q.x.value if q.x is not None else CycloElt.rational(3)
                y = q.y.value if q.y is not None else CycloElt.rational(3)
                z = _integral_z_on_line(x, y)
                return WeakIntegralityVerdict(p, [], reason=f"M_{i}° contains a line in z; integral point with z = {z}")
            if q.kind == "curve":
                w = _curve_witness(p, r, q)
                if w is not None:
                    return WeakIntegralityVerdict(p, [], reason=f"M_{i}° contains a curve with integral point {w}")
                undetermined.append(f"no integral witness found on a curve of M_{i}°")
                continue
            points.append((i, q))
    if undetermined:
        return WeakIntegralityVerdict(p, [], reason="positive dimensional piece without witness", undetermined=undetermined)
    if not points:
        return WeakIntegralityVerdict(
            p, [], all_primes_fail=True, reason="no absolutely irreducible characters: every M_i° is empty"
        )
    # finitely many points with x, y algebraic integers: only z matters
    candidates = set()
    for _, q in points:
        if not q.z.is_zero():
            den = 1
            for c in q.z.min_poly():
                den = den * c.denominator // gcd(den, c.denominator)
            candidates.update(prime_factors(den))
    failing, certs, integral = [], {}, {}
    for ell in sorted(candidates):
        per_point = []
        witness = None
        for i, q in points:
            rep = _slopes(q.z, ell)
            per_point.append({"component": i, "x": q.x.label(), "y": q.y.label(), "slopes": rep.to_json()["slopes"]})
            if rep.is_integral_somewhere and witness is None:
                witness = per_point[-1]
        if witness is None:
            failing.append(ell)
            certs[ell] = per_point
        else:
            integral[ell] = witness
    return WeakIntegralityVerdict(
        p,
        failing,
        reason="all gen.irr components are finite sets of points",
        certificates=certs,
        integral_primes_checked=integral,
    )


# the groups a^(l^k (l^k - 1)) b a^(-l^k) b^-2


def gamma_presentation(ell: int, k: int) -> GroupPresentation:
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if k < 1:
        raise ValueError("k must be positive")
    q = ell ** k
    return GroupPresentation(q * (q - 1), 1, -q, -2)


def gamma_order_indices(ell: int, k: int) -> list[int]:
    return list(range(k + 2, 2 * k + 2)) if ell == 2 else list(range(k + 1, 2 * k + 1))


def gamma_closed_form(ell: int, k: int, i: int) -> Fraction:
    if ell == 2:
        return Fraction(1 - 2 ** k, 2 ** (i - 2))
    return Fraction(1 - ell ** k, ell ** (i - 1) * (ell - 1))


def _order_index(order: int, ell: int) -> int:
    """i with order = ell^i or 2 ell^i (odd ell), order = 2^i for ell = 2."""
    i = 0
    while order % ell == 0:
        order //= ell
        i += 1
    return i


@dataclass
class GammaRow:
    component: int
    order: int
    index: int
    y: CycloElt
    newton: tuple
    norm_quotient: Fraction
    closed_form: Fraction
    norm: Fraction
    norm_is_ell_power: bool
    orbit_size: int

    @property
    def ok(self) -> bool:
        return (
            len(set(self.newton)) == 1
            and self.newton[0] == self.norm_quotient == self.closed_form
            and -1 < self.closed_form < 0
            and self.norm_is_ell_power
        )

    def to_json(self) -> dict:
        return {
            "component": self.component,
            "order_rho_a": self.order,
            "i": self.index,
            "y": self.y.to_json(),
            "newton_slopes": sorted({str(s) for s in self.newton}),
            "norm_quotient": str(self.norm_quotient),
            "closed_form": str(self.closed_form),
            "norm_z": str(self.norm),
            "norm_is_power_of_ell": self.norm_is_ell_power,
            "orbit_size": self.orbit_size,
            "ok": self.ok,
        }


def _is_pm_power(q: Fraction, ell: int) -> bool:
    q = abs(q)
    for v in (q.numerator, q.denominator):
        while v % ell == 0:
            v //= ell
        if v != 1:
            return False
    return True


@dataclass
class GammaReport:
    ell: int
    k: int
    presentation: GroupPresentation
    rows: list[GammaRow]

    @property
    def orbit_count(self) -> int:
        return len(self.rows)

    @property
    def expected_orbit_count(self) -> int:
        return self.k if self.ell == 2 else 2 * self.k

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "k": self.k,
            "presentation": self.presentation.to_json(),
            "orbit_count": self.orbit_count,
            "expected_orbit_count": self.expected_orbit_count,
            "rows": [r.to_json() for r in self.rows],
        }


def gamma_valuations(ell: int, k: int) -> GammaReport:
    """One row per Galois orbit of gen.irr points: the valuation of z at the
    unique place above ell computed from the Newton polygon and from the
    norm, against the closed form for the order index of rho(a)."""
    p = gamma_presentation(ell, k)
    field_conductor = 2 * ell ** (2 * k)
    rows = []
    for pts in (m9_points(p), m10_points(p)):
        reps = orbit_representatives(pts)
        sizes = {}
        for q in pts:
            sizes[q.orbit] = sizes.get(q.orbit, 0) + 1
        for q in reps:
            if q.red().is_zero():
                continue
            order = q.lam.order
            idx = _order_index(order, ell)
            rows.append(
                GammaRow(
                    q.component,
                    order,
                    idx,
                    q.y,
                    valuations_above(q.z, ell).slopes,
                    norm_valuation(q.z, ell, field_conductor),
                    gamma_closed_form(ell, k, idx),
                    q.z.norm(field_conductor),
                    _is_pm_power(q.z.norm(field_conductor), ell),
                    sizes[q.orbit],
                )
            )
    rows.sort(key=lambda r: (r.component, r.index))
    return GammaReport(ell, k, p, rows)


def field_degree(ell: int, k: int) -> int:
    return euler_phi(2 * ell ** (2 * k))


__all__ = [
    "CyclotomicPoint",
    "EMPTY",
    "GammaReport",
    "GammaRow",
    "M9Point",
    "WeakIntegralityVerdict",
    "eigen_z",
    "field_degree",
    "gamma_closed_form",
    "gamma_order_indices",
    "gamma_presentation",
    "gamma_valuations",
    "m10_points",
    "m9_points",
    "orbit_representatives",
    "satisfies_component",
    "weak_integrality",
]
