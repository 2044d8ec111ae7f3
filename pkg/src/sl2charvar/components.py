"""The ten prime components of the universal relation ideal and their
pairwise intersections, with membership certificates.

The ideals are stored as data (data/ideals.json) and checked here by
Groebner normal forms, never recomputed by a decomposition algorithm.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .chebyshev import cheb_pair
from .groebner import GREVLEX, IdealData, MonomialOrder, groebner_basis, normal_form
from .mpoly import MPoly
from .trace_algebra import GroupPresentation, SYMBOLIC, Word, specialization_map, specialize

TRIVIAL = "trivial"

MAX_GRAPH_EDGES = frozenset(
    frozenset(e)
    for e in [
        (10, 1), (10, 3), (10, 6), (10, 8),
        (1, 5), (1, 7), (3, 5), (3, 7),
        (6, 2), (6, 4), (8, 2), (8, 4),
        (5, 9), (7, 9), (2, 9), (4, 9),
    ]
)


@lru_cache(maxsize=1)
def _fixtures() -> dict:
    text = resources.files("sl2charvar").joinpath("data/ideals.json").read_text()
    return json.loads(text)


def universal_ideal() -> IdealData:
    return IdealData.from_strings(_fixtures()["universal"], "I")


def component_ideal(i: int) -> IdealData:
    if i not in range(1, 11):
        raise ValueError(f"component index {i} out of range 1..10")
    return IdealData.from_strings(_fixtures()["components"][str(i)], f"P{i}")


def intersection_ideal(i: int, j: int):
    """The tabulated ideal for an edge of the maximum graph, else TRIVIAL."""
    if i == j:
        raise ValueError("intersection of a component with itself")
    for a, b in ((i, j), (j, i)):
        key = f"{a}+{b}"
        if key in _fixtures()["intersections"]:
            return IdealData.from_strings(_fixtures()["intersections"][key], f"P{a}+P{b}")
    return TRIVIAL


def _v(name: str) -> MPoly:
    return MPoly.var(name)


def _swap_nm(p: MPoly) -> MPoly:
    """Exchange n and m labels and x with y."""
    mapping = {}
    for k in ("1", "2"):
        for g in ("g_", "d_"):
            mapping[g + "n" + k] = _v(g + "m" + k)
            mapping[g + "m" + k] = _v(g + "n" + k)
    mapping["x"], mapping["y"] = _v("y"), _v("x")
    return p.substitute(mapping)


def square_difference_combination(variant: str = "literal") -> tuple[MPoly, MPoly]:
    """Explicit combination of generators claimed to equal g_n1^2 - g_n2^2.

    "literal" is the stored expression taken symbol for symbol; "corrected"
    replaces the single factor d_m2 in the first bracket's y-term by g_m2,
    which turns the expression into an identity.  Returns (target, combination).
    """
    gn1, gn2, gm1, gm2 = _v("g_n1"), _v("g_n2"), _v("g_m1"), _v("g_m2")
    dm1, dm2, y = _v("d_m1"), _v("d_m2"), _v("y")
    if variant == "literal":
        extra = -y * gn2 * dm2
    elif variant == "corrected":
        extra = -y * gn2 * gm2
    else:
        raise ValueError(f"unknown variant {variant!r}")
    det_m1 = gm1 * gm1 + y * gm1 * dm1 + dm1 * dm1 - 1
    det_m2 = gm2 * gm2 + y * gm2 * dm2 + dm2 * dm2 - 1
    combo = (
        (gn1 * dm1 - gn2 * dm2 + extra) * (gn1 * dm1 + gn2 * dm2)
        + (gn1 * gm1 - gn2 * gm2 + y * gn1 * dm1) * (gn1 * gm1 + gn2 * gm2)
        - gn1 * gn1 * det_m1
        + gn2 * gn2 * det_m2
    )
    return gn1 * gn1 - gn2 * gn2, combo


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class CertificateReport:
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> Check:
        c = Check(name, bool(passed), detail)
        self.checks.append(c)
        return c

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def section(self, prefix: str) -> list[Check]:
        return [c for c in self.checks if c.name.startswith(prefix)]

    def to_json(self) -> dict:
        return {"title": self.title, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _contains_all(big: IdealData, small: IdealData, order, max_steps) -> tuple[bool, str]:
    basis = big.basis(order, max_steps)
    for g in small.generators:
        nf = normal_form(g, basis, order)
        if not nf.is_zero():
            return False, f"{g} has normal form {nf} modulo {big.name}"
    return True, ""


def verify_decomposition(order: MonomialOrder = GREVLEX, max_steps: int | None = None) -> CertificateReport:
    """Membership certificates for the component and intersection tables.

    a) every generator of I lies in every component ideal
    b) each tabulated intersection equals the sum of its two components
    c) g_n1^2 - g_n2^2 and g_m1^2 - g_m2^2 lie in I, and the explicit
       stored combination is expanded and compared term by term
    d) every pair missing from the maximum graph has 1 in the sum
    """
    rep = CertificateReport("decomposition")
    I = universal_ideal()
    comps = {i: component_ideal(i) for i in range(1, 11)}
    for i, P in comps.items():
        basis = P.basis(order, max_steps)
        for k, g in enumerate(I.generators):
            nf = normal_form(g, basis, order)
            rep.add(f"a: I[{k}] in P{i}", nf.is_zero(), "" if nf.is_zero() else f"normal form {nf}")
        rep.add(f"a: P{i} proper", not P.contains_one(order, max_steps))
    for key in sorted(_fixtures()["intersections"], key=lambda s: tuple(map(int, s.split("+")))):
        i, j = map(int, key.split("+"))
        table = intersection_ideal(i, j)
        total = comps[i] + comps[j]
        ok1, why1 = _contains_all(total, table, order, max_steps)
        ok2, why2 = _contains_all(table, total, order, max_steps)
        rep.add(f"b: P{i}+P{j} contains table", ok1, why1)
        rep.add(f"b: table contains P{i}+P{j}", ok2, why2)
        rep.add(f"b: P{i}+P{j} proper", not total.contains_one(order, max_steps))
    for target in ("g_n1^2 - g_n2^2", "g_m1^2 - g_m2^2"):
        ok, nf = I.member(MPoly.parse(target), order, max_steps)
        rep.add(f"c: {target} in I", ok, "" if ok else f"normal form {nf}")
    target, combo = square_difference_combination("literal")
    diff = target - combo
    rep.add(
        "c: literal combination equals g_n1^2 - g_n2^2",
        diff.is_zero(),
        "" if diff.is_zero() else f"target minus combination = {diff}",
    )
    for i in range(1, 11):
        for j in range(i + 1, 11):
            if frozenset((i, j)) in MAX_GRAPH_EDGES:
                continue
            total = comps[i] + comps[j]
            rep.add(f"d: 1 in P{i}+P{j}", total.contains_one(order, max_steps))
    return rep


def verify_square_difference_corrected() -> CertificateReport:
    """The one-symbol correction of the literal combination, both versions."""
    rep = CertificateReport("corrected square-difference combination")
    target, combo = square_difference_combination("corrected")
    rep.add("n-version", (target - combo).is_zero(), str(target - combo))
    t2, c2 = _swap_nm(target), _swap_nm(combo)
    rep.add("m-version", (t2 - c2).is_zero(), str(t2 - c2))
    return rep


# specialized ideals and matrix conditions

# For components 1..8: (side constrained to a finite set, signs of the two
# power conditions on that side, sign of the power condition on the sum of
# the other side's exponents).
POWER_CONDITIONS = {
    1: ("n", (-1, -1), 1),
    2: ("n", (-1, 1), -1),
    3: ("n", (1, 1), 1),
    4: ("n", (1, -1), -1),
    5: ("m", (-1, -1), 1),
    6: ("m", (-1, 1), -1),
    7: ("m", (1, 1), 1),
    8: ("m", (1, -1), -1),
}


def specialized_component(p: GroupPresentation, i: int) -> IdealData:
    """The ideal P_i^e in Q[x, y, z] (determinant generators dropped, they map to 0)."""
    gens = []
    for g in component_ideal(i).generators:
        s = specialize(g, p)
        if not s.is_zero():
            gens.append(s)
    return IdealData(gens, f"P{i}^e")


def _sum_targets(i: int) -> tuple[MPoly, MPoly]:
    """Universal images of c_{e1+e2} and d_{e1+e2} - s on the free side of P_i."""
    side, _, sign = POWER_CONDITIONS[i]
    other = "m" if side == "n" else "n"
    t = _v("y") if other == "m" else _v("x")
    g1, d1 = _v(f"g_{other}1"), _v(f"d_{other}1")
    g2, d2 = _v(f"g_{other}2"), _v(f"d_{other}2")
    c_sum = t * g1 * g2 + g1 * d2 + d1 * g2
    d_sum = d1 * d2 - g1 * g2
    return c_sum, d_sum - sign


def verify_matrix_semantics(p: GroupPresentation, i: int, max_steps: int | None = 2000) -> CertificateReport:
    """Tie the generators of P_i^e to the matrix conditions of M_i.

    For i <= 8: c_{e1+e2} and d_{e1+e2} - s lie in P_i (universally, hence in
    P_i^e for every exponent tuple).  For i = 1 the two stored combinations
    are expanded as well.  For i = 9, 10: the z-generator specializes to the
    trace of a^n1 b^m1.
    """
    rep = CertificateReport(f"matrix semantics P{i} for {p}")
    if i not in range(1, 11):
        raise ValueError(f"component index {i} out of range 1..10")
    if i <= 8:
        P = component_ideal(i)
        c_t, d_t = _sum_targets(i)
        for label, target in (("c_sum", c_t), ("d_sum - s", d_t)):
            ok, nf = P.member(target, GREVLEX, max_steps)
            rep.add(f"{label} in P{i}", ok, "" if ok else f"normal form {nf}")
            spec = specialize(target, p)
            if spec.is_constant() and not spec.is_zero():
                rep.add(f"{label} specializes to nonzero constant {spec}: P{i}^e is the unit ideal", True)
        if i == 1:
            y = _v("y")
            g1, d1, g2, d2 = _v("g_m1"), _v("d_m1"), _v("g_m2"), _v("d_m2")
            combo_c = g2 * (y * g1 + d1 - d2) + (g1 + g2) * d2
            rep.add("stored c-combination is an identity", (c_t - combo_c).is_zero(), str(c_t - combo_c))
            det = g1 * g1 + y * g1 * d1 + d1 * d1 - 1
            combo_d = d1 * (d2 - y * g1 - d1) + det - (g1 + g2) * g2
            resid = d_t - combo_d
            rep.add(
                "stored d-combination differs from d_sum - 1 by an element of P1",
                P.member(resid, GREVLEX, max_steps)[0],
                f"difference {resid}",
            )
            rep.checks[-1].detail += "; exact identity" if resid.is_zero() else "; not an exact identity"
    else:
        trace = SYMBOLIC.expand(Word.normalized([("a", p.n1), ("b", p.m1)])).trace()
        zgen = component_ideal(i).generators[4]
        spec = specialize(zgen, p)
        rep.add("z-generator equals tr(a^n1 b^m1)", spec == trace, str(spec - trace))
        m = specialization_map(p)
        zcoef = m["g_n1"] * m["g_m1"]
        coeff = MPoly({e[:2] + (0,) + e[3:]: c for e, c in spec.terms.items() if e[2] == 1})
        rep.add("z-coefficient is c_n1(x) c_m1(y)", coeff == zcoef, str(coeff - zcoef))
    return rep


def specialized_groebner(p: GroupPresentation, i: int, max_steps: int | None = 5000) -> list[MPoly]:
    return groebner_basis(specialized_component(p, i).generators, GREVLEX, max_steps)


def cd_values(e: int, t):
    """(c_e(t), d_e(t)) evaluated at a ring element."""
    pair = cheb_pair(e)
    return pair.c(t), pair.d(t)
