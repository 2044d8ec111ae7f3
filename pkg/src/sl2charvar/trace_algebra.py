"""The rank 4 trace algebra of the free group on a, b.

Elements are c1*1 + ca*a + cb*b + cab*ab with coefficients in a commutative
ring that contains the traces x = tr a, y = tr b, z = tr ab.  Words are
expanded syllable by syllable using g^n = c_n(tr g) g + d_n(tr g).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .chebyshev import cheb_pair
from .mpoly import MPoly

# words


@dataclass(frozen=True)
class Word:
    """Alternating syllables (generator, nonzero exponent)."""

    syllables: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, *syllables) -> Word:
        return cls.normalized(syllables)

    @classmethod
    def normalized(cls, syllables) -> Word:
        out: list[list] = []
        for g, e in syllables:
            if g not in ("a", "b"):
                raise ValueError(f"unknown generator {g!r}")
            e = int(e)
            if out and out[-1][0] == g:
                out[-1][1] += e
            else:
                out.append([g, e])
            if out[-1][1] == 0:
                out.pop()
        return cls(tuple((g, e) for g, e in out))

    @classmethod
    def parse(cls, text: str) -> Word:
        """Parse "a^2 b^-1 a^3"; bare letters mean exponent 1."""
        text = text.replace("−", "-").strip()
        if not text:
            raise ValueError("empty word")
        syl = []
        for tok in text.split():
            m = re.fullmatch(r"([ab])(?:\^(-?\d+))?", tok)
            if not m:
                raise ValueError(f"bad syllable {tok!r} in word {text!r}")
            syl.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
        return cls.normalized(syl)

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.syllables)


@dataclass(frozen=True)
class GroupPresentation:
    """<a, b | a^n1 b^m1 a^n2 b^m2>."""

    n1: int
    m1: int
    n2: int
    m2: int

    def __post_init__(self):
        if self.n1 == 0 or self.n2 == 0:
            raise ValueError("n1 and n2 must be nonzero")

    @property
    def s(self) -> int:
        return self.n1 - self.n2

    @property
    def t(self) -> int:
        return self.m1 - self.m2

    def exponents(self) -> tuple[int, int, int, int]:
        return (self.n1, self.m1, self.n2, self.m2)

    def word(self) -> Word:
        return Word.normalized([("a", self.n1), ("b", self.m1), ("a", self.n2), ("b", self.m2)])

    def to_json(self) -> dict:
        return {"n1": self.n1, "m1": self.m1, "n2": self.n2, "m2": self.m2, "s": self.s, "t": self.t}

    def __str__(self) -> str:
        return f"<a,b | a^{self.n1} b^{self.m1} a^{self.n2} b^{self.m2}>"


# the algebra


@dataclass(frozen=True)
class TraceVector:
    c1: object
    ca: object
    cb: object
    cab: object
    algebra: TraceAlgebra

    def coeffs(self) -> tuple:
        return (self.c1, self.ca, self.cb, self.cab)

    def __add__(self, other: TraceVector) -> TraceVector:
        self.algebra._check(other)
        return self.algebra.vector(*(u + v for u, v in zip(self.coeffs(), other.coeffs())))

    def scale(self, r) -> TraceVector:
        return self.algebra.vector(*(r * u for u in self.coeffs()))

    def __mul__(self, other: TraceVector) -> TraceVector:
        return self.algebra.mult(self, other)

    def trace(self):
        """2 c1 + x ca + y cb + z cab."""
        A = self.algebra
        return 2 * self.c1 + A.x * self.ca + A.y * self.cb + A.z * self.cab

    def __eq__(self, other) -> bool:
        return isinstance(other, TraceVector) and self.algebra is other.algebra and self.coeffs() == other.coeffs()

    def __hash__(self) -> int:
        return hash(self.coeffs())


class TraceAlgebra:
    """H[F2] over a coefficient ring, given by the images of x, y, z.

    The structure constants come from a^2 = x a - 1, b^2 = y b - 1 and
    b a = (z - x y) + y a + x b - ab, the last one read off from
    (ab)^-1 = b^-1 a^-1 = (y - b)(x - a).
    """

    def __init__(self, x, y, z, one=1, zero=0):
        self.x, self.y, self.z = x, y, z
        self.one, self.zero = one, zero
        o, n = one, zero
        # table[i][j] = e_i * e_j with e = (1, a, b, ab)
        self._table = {
            (1, 1): (-o, x, n, n),
            (1, 2): (n, n, n, o),
            (1, 3): (n, n, -o, x),
            (2, 1): (z - x * y, y, x, -o),
            (2, 2): (-o, n, y, n),
            (2, 3): (-x, o, z, n),
            (3, 1): (-y, z, o, n),
            (3, 2): (n, -o, n, y),
            (3, 3): (-o, n, n, z),
        }

    def vector(self, c1, ca, cb, cab) -> TraceVector:
        return TraceVector(c1, ca, cb, cab, self)

    def unit(self) -> TraceVector:
        return self.vector(self.one, self.zero, self.zero, self.zero)

    def basis(self) -> tuple[TraceVector, ...]:
        o, n = self.one, self.zero
        return (self.vector(o, n, n, n), self.vector(n, o, n, n), self.vector(n, n, o, n), self.vector(n, n, n, o))

    def _check(self, v: TraceVector):
        if v.algebra is not self:
            raise ValueError("trace vectors over different coefficient rings")

    def mult(self, u: TraceVector, v: TraceVector) -> TraceVector:
        self._check(u)
        self._check(v)
        uc, vc = u.coeffs(), v.coeffs()
        acc = [self.zero] * 4
        for i in range(4):
            if _is_zero(uc[i]):
                continue
            for j in range(4):
                if _is_zero(vc[j]):
                    continue
                r = uc[i] * vc[j]
                if i == 0:
                    acc[j] = acc[j] + r
                elif j == 0:
                    acc[i] = acc[i] + r
                else:
                    row = self._table[(i, j)]
                    for k in range(4):
                        if not _is_zero(row[k]):
                            acc[k] = acc[k] + r * row[k]
        return self.vector(*acc)

    def power(self, gen: str, n: int) -> TraceVector:
        """g^n = c_n(tr g) g + d_n(tr g)."""
        p = cheb_pair(n)
        t = self.x if gen == "a" else self.y
        c, d = _eval(p.c, t, self), _eval(p.d, t, self)
        if gen == "a":
            return self.vector(d, c, self.zero, self.zero)
        return self.vector(d, self.zero, c, self.zero)

    def expand(self, w: Word) -> TraceVector:
        v = self.unit()
        for g, e in w.syllables:
            v = self.mult(v, self.power(g, e))
        return v


def _is_zero(r) -> bool:
    if isinstance(r, MPoly):
        return r.is_zero()
    try:
        return r == 0
    except TypeError:
        return False


def _eval(poly, t, algebra: TraceAlgebra):
    v = poly(t)
    if isinstance(v, int):
        return v * algebra.one
    return v


SYMBOLIC = TraceAlgebra(MPoly.var("x"), MPoly.var("y"), MPoly.var("z"), MPoly.const(1), MPoly())


def h_mult(u: TraceVector, v: TraceVector) -> TraceVector:
    return u.algebra.mult(u, v)


def expand_word(w: Word, algebra: TraceAlgebra = SYMBOLIC) -> TraceVector:
    """Coefficients of w in the basis 1, a, b, ab (over Z[x,y,z] by default)."""
    return algebra.expand(w)


def word_trace(w: Word, algebra: TraceAlgebra = SYMBOLIC):
    return algebra.expand(w).trace()


def red_poly() -> MPoly:
    return MPoly.parse("x^2 + y^2 + z^2 - x*y*z - 4")


def red_value(x, y, z):
    return x * x + y * y + z * z - x * y * z - 4


# relation ideals


def _gd(name: str) -> tuple[MPoly, MPoly]:
    return MPoly.var("g_" + name), MPoly.var("d_" + name)


def _symbolic_power(gen: str, name: str, inverse: bool) -> TraceVector:
    """g^{e} or g^{-e} with c_e, d_e replaced by the formal gamma, delta."""
    g, d = _gd(name)
    t = SYMBOLIC.x if gen == "a" else SYMBOLIC.y
    zero = MPoly()
    if inverse:
        c, dd = -g, t * g + d
    else:
        c, dd = g, d
    if gen == "a":
        return SYMBOLIC.vector(dd, c, zero, zero)
    return SYMBOLIC.vector(dd, zero, c, zero)


def _match(left: TraceVector, right: TraceVector) -> list[MPoly]:
    """Equations from left = right in the form used for I: r1 - l1, then l - r."""
    l1, la, lb, lab = left.coeffs()
    r1, ra, rb, rab = right.coeffs()
    return [r1 - l1, la - ra, lb - rb, lab - rab]


def determinant_generators() -> list[MPoly]:
    out = []
    for name, t in (("n1", "x"), ("n2", "x"), ("m1", "y"), ("m2", "y")):
        g, d = _gd(name)
        out.append(g * g + MPoly.var(t) * g * d + d * d - 1)
    return out


def relation_ideal_generators(p: GroupPresentation, mode: str = "concrete") -> list[MPoly]:
    """Generators from a^n2 b^m2 = b^-m1 a^-n1.

    concrete: four polynomials in x, y, z (the ideal I^e).
    symbolic: the universal ideal I in the gamma/delta ring, four matching
    equations followed by the four determinant relations.
    """
    if mode == "concrete":
        left = SYMBOLIC.expand(Word.normalized([("a", p.n2), ("b", p.m2)]))
        right = SYMBOLIC.expand(Word.normalized([("b", -p.m1), ("a", -p.n1)]))
        return _match(left, right)
    if mode == "symbolic":
        left = SYMBOLIC.mult(_symbolic_power("a", "n2", False), _symbolic_power("b", "m2", False))
        right = SYMBOLIC.mult(_symbolic_power("b", "m1", True), _symbolic_power("a", "n1", True))
        return _match(left, right) + determinant_generators()
    raise ValueError(f"unknown mode {mode!r}")


def word_relation_generators(w: Word) -> list[MPoly]:
    """(c1 - 1, ca, cb, cab) for w = 1, usable for any word."""
    c1, ca, cb, cab = SYMBOLIC.expand(w).coeffs()
    return [c1 - 1, ca, cb, cab]


def specialization_map(p: GroupPresentation) -> dict[str, MPoly]:
    """gamma_e -> c_e(t), delta_e -> d_e(t) with t = x for n's and y for m's."""
    out = {}
    for name, e, t in (("n1", p.n1, "x"), ("n2", p.n2, "x"), ("m1", p.m1, "y"), ("m2", p.m2, "y")):
        pair = cheb_pair(e)
        var = MPoly.var(t)
        out["g_" + name] = pair.c(var) if not pair.c.is_zero() else MPoly()
        out["d_" + name] = pair.d(var) if not pair.d.is_zero() else MPoly()
    for k, v in out.items():
        if isinstance(v, int):
            out[k] = MPoly.const(v)
    return out


def specialize(poly: MPoly, p: GroupPresentation) -> MPoly:
    """Push a gamma/delta polynomial to Z[x, y, z] for the exponents of p."""
    return poly.substitute(specialization_map(p))
