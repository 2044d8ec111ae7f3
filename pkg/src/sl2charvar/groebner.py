"""Buchberger's algorithm over Q with the Gebauer-Moeller pair criteria."""

from __future__ import annotations

from dataclasses import dataclass, field

from .mpoly import VAR_INDEX, VARS, MPoly

DEFAULT_PRIORITY = ("x", "y", "z", "g_n1", "g_m1", "g_n2", "g_m2", "d_n1", "d_m1", "d_n2", "d_m2")


class ResourceLimitExceeded(RuntimeError):
    """Raised when a Groebner computation exceeds its configured step budget."""


class MonomialOrder:
    """grevlex, grlex or lex with a chosen variable priority (largest first)."""

    def __init__(self, name: str = "grevlex", priority=DEFAULT_PRIORITY):
        if name not in ("grevlex", "grlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        if sorted(priority) != sorted(VARS):
            raise ValueError("priority must list every variable once")
        self.name = name
        self.priority = tuple(priority)
        self._perm = tuple(VAR_INDEX[v] for v in priority)
        self._cache: dict = {}

    def key(self, e):
        k = self._cache.get(e)
        if k is None:
            perm = self._perm
            if self.name == "lex":
                k = tuple(e[i] for i in perm)
            elif self.name == "grlex":
                k = (sum(e),) + tuple(e[i] for i in perm)
            else:
                k = (sum(e),) + tuple(-e[i] for i in reversed(perm))
            self._cache[e] = k
        return k

    def __repr__(self) -> str:
        return f"MonomialOrder({self.name!r}, {self.priority!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and (self.name, self.priority) == (other.name, other.priority)

    def __hash__(self) -> int:
        return hash((self.name, self.priority))


GREVLEX = MonomialOrder()


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Poly:
    """Working form inside the algorithm: terms plus cached leading monomial."""

    __slots__ = ("terms", "lm")

    def __init__(self, terms: dict, order: MonomialOrder):
        self.terms = terms
        self.lm = max(terms, key=order.key)

    def monic(self, order):
        c = self.terms[self.lm]
        if c != 1:
            self.terms = {e: v / c for e, v in self.terms.items()}
        return self


def _reduce(terms: dict, basis: list, order: MonomialOrder) -> dict:
    """Full normal form of terms modulo monic polynomials in basis."""
    p = dict(terms)
    rem: dict = {}
    key = order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for g in basis:
            if _divides(g.lm, m):
                q = _sub(m, g.lm)
                for e, gc in g.terms.items():
                    e2 = _mul(e, q)
                    v = p.get(e2, 0) - c * gc
                    if v:
                        p[e2] = v
                    else:
                        del p[e2]
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: _Poly, g: _Poly) -> dict:
    L = _lcm(f.lm, g.lm)
    qf, qg = _sub(L, f.lm), _sub(L, g.lm)
    out: dict = {}
    for e, c in f.terms.items():
        out[_mul(e, qf)] = c
    for e, c in g.terms.items():
        e2 = _mul(e, qg)
        v = out.get(e2, 0) - c
        if v:
            out[e2] = v
        else:
            out.pop(e2, None)
    return out


def _update(polys: list, G: set, B: set, ih: int):
    """Gebauer-Moeller installation of polys[ih] into basis G and pair set B."""
    mh = polys[ih].lm
    C = set(G)
    D = set()
    while C:
        ig = C.pop()
        mg = polys[ig].lm
        L = _lcm(mh, mg)

        def lcm_divides(ip):
            return _divides(_lcm(mh, polys[ip].lm), L)

        if _mul(mh, mg) == L or (not any(lcm_divides(i) for i in C) and not any(lcm_divides(p[1]) for p in D)):
            D.add((ih, ig))
    E = set()
    for ih2, ig in D:
        mg = polys[ig].lm
        if _mul(mh, mg) != _lcm(mh, mg):
            E.add((ih2, ig))
    B_new = set()
    for ig1, ig2 in B:
        m1, m2 = polys[ig1].lm, polys[ig2].lm
        L12 = _lcm(m1, m2)
        if not _divides(mh, L12) or _lcm(m1, mh) == L12 or _lcm(m2, mh) == L12:
            B_new.add((ig1, ig2))
    B_new |= E
    G_new = {ig for ig in G if not _divides(mh, polys[ig].lm)}
    G_new.add(ih)
    return G_new, B_new


def groebner_basis(generators, order: MonomialOrder = GREVLEX, max_steps: int | None = None) -> list[MPoly]:
    """Reduced, monic Groebner basis of the ideal spanned by generators.

    max_steps bounds the number of S-polynomial reductions; exceeding it
    raises ResourceLimitExceeded rather than returning a partial answer.
    """
    key = order.key
    polys: list[_Poly] = []
    G: set = set()
    B: set = set()
    inputs = [g.terms for g in generators if not g.is_zero()]
    if not inputs:
        return []
    inputs.sort(key=lambda t: key(max(t, key=key)))
    for t in inputs:
        active = [polys[i] for i in sorted(G)]
        r = _reduce(t, active, order) if active else dict(t)
        if not r:
            continue
        polys.append(_Poly(r, order).monic(order))
        G, B = _update(polys, G, B, len(polys) - 1)
    steps = 0
    while B:
        pair = min(B, key=lambda pr: (key(_lcm(polys[pr[0]].lm, polys[pr[1]].lm)), pr))
        B.discard(pair)
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise ResourceLimitExceeded(f"Groebner basis exceeded {max_steps} S-polynomial steps")
        s = _spoly(polys[pair[0]], polys[pair[1]])
        if not s:
            continue
        h = _reduce(s, [polys[i] for i in sorted(G)], order)
        if h:
            polys.append(_Poly(h, order).monic(order))
            G, B = _update(polys, G, B, len(polys) - 1)
    basis = [polys[i] for i in G]
    # minimal: drop elements whose leading monomial is divisible by another's
    basis.sort(key=lambda p: key(p.lm))
    minimal = []
    for p in basis:
        if not any(_divides(q.lm, p.lm) for q in minimal):
            minimal.append(p)
    reduced = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        tail = dict(p.terms)
        lead = tail.pop(p.lm)
        r = _reduce(tail, others, order)
        r[p.lm] = lead
        reduced.append(_Poly(r, order).monic(order))
    reduced.sort(key=lambda p: key(p.lm), reverse=True)
    return [MPoly(p.terms) for p in reduced]


def _as_working(basis: list[MPoly], order: MonomialOrder) -> list[_Poly]:
    return [_Poly(dict(g.terms), order).monic(order) for g in basis if not g.is_zero()]


def normal_form(p: MPoly, basis: list[MPoly], order: MonomialOrder = GREVLEX) -> MPoly:
    return MPoly(_reduce(p.terms, _as_working(basis, order), order))


def is_groebner(basis: list[MPoly], order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    work = _as_working(basis, order)
    for i in range(len(work)):
        for j in range(i + 1, len(work)):
            s = _spoly(work[i], work[j])
            if s and _reduce(s, work, order):
                return False
    return True


def leading_monomial(p: MPoly, order: MonomialOrder = GREVLEX):
    return max(p.terms, key=order.key)


@dataclass
class IdealData:
    """Generators of an ideal plus a cache of Groebner bases keyed by order."""

    generators: list[MPoly]
    name: str = ""
    groebner_cache: dict = field(default_factory=dict)

    @classmethod
    def from_strings(cls, polys, name: str = "") -> IdealData:
        return cls([MPoly.parse(s) for s in polys], name)

    def basis(self, order: MonomialOrder = GREVLEX, max_steps: int | None = None) -> list[MPoly]:
        if order not in self.groebner_cache:
            self.groebner_cache[order] = groebner_basis(self.generators, order, max_steps)
        return self.groebner_cache[order]

    def member(self, p: MPoly, order: MonomialOrder = GREVLEX, max_steps: int | None = None) -> tuple[bool, MPoly]:
        nf = normal_form(p, self.basis(order, max_steps), order)
        return nf.is_zero(), nf

    def contains_one(self, order: MonomialOrder = GREVLEX, max_steps: int | None = None) -> bool:
        return self.member(MPoly.const(1), order, max_steps)[0]

    def __add__(self, other: IdealData) -> IdealData:
        name = f"{self.name}+{other.name}" if self.name and other.name else ""
        return IdealData(list(self.generators) + list(other.generators), name)


__all__ = [
    "DEFAULT_PRIORITY",
    "GREVLEX",
    "IdealData",
    "MonomialOrder",
    "ResourceLimitExceeded",
    "groebner_basis",
    "is_groebner",
    "leading_monomial",
    "normal_form",
]
