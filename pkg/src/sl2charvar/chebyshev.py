"""Integer polynomials in one variable and the trace polynomials c_n, d_n.

For M in SL2 and any integer n, M^n = c_n(tr M) M + d_n(tr M) I.  The pair
(c_n, d_n) is read off the n-th power of the companion matrix
R(t) = [[t, 1], [-1, 0]], since R^n = [[c_{n+1}, c_n], [d_{n+1}, d_n]].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from flint import fmpq, fmpq_poly, fmpz, fmpz_poly


class IntPoly:
    """Dense polynomial in t with arbitrary precision integer coefficients.

    Thin immutable wrapper around flint's fmpz_poly.  Coefficients are in
    ascending degree order with no trailing zeros.
    """

    __slots__ = ("_p", "_key")

    def __init__(self, coeffs=()):
        if isinstance(coeffs, fmpz_poly):
            p = coeffs
        else:
            p = fmpz_poly([int(c) for c in coeffs])
        self._p = p
        self._key = None

    @classmethod
    def t(cls) -> IntPoly:
        return cls([0, 1])

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls([c])

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        """Read the comma separated ascending format, e.g. "-1,0,1"."""
        text = text.strip().replace("−", "-")
        if not text:
            raise ValueError("empty polynomial text")
        try:
            return cls([int(part) for part in text.split(",")])
        except ValueError as exc:
            raise ValueError(f"bad polynomial text {text!r}") from exc

    @property
    def coeffs(self) -> tuple[int, ...]:
        if self._key is None:
            self._key = tuple(int(c) for c in self._p.coeffs())
        return self._key

    @property
    def flint(self) -> fmpz_poly:
        return self._p

    def degree(self) -> int:
        return self._p.degree()

    def is_zero(self) -> bool:
        return self._p.degree() < 0

    def leading_coefficient(self) -> int:
        return int(self._p[self._p.degree()]) if not self.is_zero() else 0

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if not self.is_zero() else "0"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        key = self.coeffs
        for k in range(len(key) - 1, -1, -1):
            c = key[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._p == other._p

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @staticmethod
    def _coerce(other) -> IntPoly:
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly.const(other)
        raise TypeError(f"cannot combine IntPoly with {type(other).__name__}")

    def __add__(self, other):
        return IntPoly(self._p + self._coerce(other)._p)

    __radd__ = __add__

    def __sub__(self, other):
        return IntPoly(self._p - self._coerce(other)._p)

    def __rsub__(self, other):
        return IntPoly(self._coerce(other)._p - self._p)

    def __mul__(self, other):
        return IntPoly(self._p * self._coerce(other)._p)

    __rmul__ = __mul__

    def __neg__(self):
        return IntPoly(-self._p)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        return IntPoly(self._p**e)

    def divmod_exact(self, other: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Division with remainder; other must be monic up to sign."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if abs(other.leading_coefficient()) != 1:
            raise ValueError("divisor must have leading coefficient +-1")
        q, r = divmod(self._p, other._p)
        return IntPoly(q), IntPoly(r)

    def derivative(self) -> IntPoly:
        return IntPoly(self._p.derivative())

    def compose(self, inner: IntPoly) -> IntPoly:
        """Return self(inner(t))."""
        if self.is_zero():
            return self
        return IntPoly(self._p(inner._p))

    def __call__(self, value):
        """Evaluate at an int, a Fraction, an IntPoly, or any ring element.

        Ring elements only need +, * with ints; Horner's rule is used.
        """
        if isinstance(value, IntPoly):
            return self.compose(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return int(self._p(fmpz(value)))
        if isinstance(value, Fraction):
            r = self._p(fmpq(value.numerator, value.denominator))
            return Fraction(int(r.p), int(r.q))
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        if acc is None:
            return 0 * value
        if isinstance(acc, int):
            return acc + 0 * value
        return acc


T = IntPoly.t()
ONE = IntPoly.const(1)
ZERO = IntPoly()


@dataclass(frozen=True)
class ChebPair:
    """(c_n, d_n) with M^n = c_n(tr M) M + d_n(tr M) I."""

    n: int
    c: IntPoly
    d: IntPoly


@lru_cache(maxsize=None)
def _c_window(n: int):
    """(c_n, c_{n+1}) for n >= 0 by doubling.

    With c_n = U_{n-1}(t/2): c_{2n} = c_n (c_{n+1} - c_{n-1}) and
    c_{2n+1} = c_{n+1}^2 - c_n^2, where c_{n-1} = t c_n - c_{n+1}.
    """
    t = fmpz_poly([0, 1])
    if n == 0:
        return fmpz_poly([]), fmpz_poly([1])
    a, b = _c_window(n // 2)
    prev = t * a - b
    even, odd = a * (b - prev), b * b - a * a
    if n % 2:
        return odd, t * odd - even
    return even, odd


@lru_cache(maxsize=None)
def cheb_pair(n: int) -> ChebPair:
    """Return (c_n, d_n), using d_n = -c_{n-1}; negative n uses
    c_{-n} = -c_n and d_{-n} = c_{n+1}."""
    n = int(n)
    if n >= 1:
        prev, cur = _c_window(n - 1)
        return ChebPair(n, IntPoly(cur), IntPoly(-prev))
    if n == 0:
        return ChebPair(0, ZERO, ONE)
    cur, nxt = _c_window(-n)
    return ChebPair(n, IntPoly(-cur), IntPoly(nxt))


def c_poly(n: int) -> IntPoly:
    return cheb_pair(n).c


def d_poly(n: int) -> IntPoly:
    return cheb_pair(n).d


def cheb_at_pm2(n: int, sign: int) -> tuple[int, int]:
    """Closed form (c_n(2s), d_n(2s)) for s = +-1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    # (-1)^(n-1) for negative n is still +-1 since the parity is what counts
    par = 1 if sign == 1 or (n - 1) % 2 == 0 else -1
    c = par * n
    d = -(1 if sign == 1 or n % 2 == 0 else -1) * (n - 1)
    return c, d


@dataclass
class IdentityCheck:
    """Outcome of an exact polynomial identity check."""

    name: str
    passed: bool
    failures: list[tuple[str, IntPoly]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "failures": [{"what": w, "difference": d.to_text()} for w, d in self.failures],
        }


def determinant_check(n: int) -> IdentityCheck:
    p = cheb_pair(n)
    diff = p.c * p.c + T * p.c * p.d + p.d * p.d - 1
    fails = [] if diff.is_zero() else [("c^2+tcd+d^2-1", diff)]
    return IdentityCheck(f"det({n})", not fails, fails)


def cheb_product(n: int, m: int) -> IdentityCheck:
    """c_{n+m} = t c_n c_m + c_n d_m + d_n c_m and d_{n+m} = d_n d_m - c_n c_m."""
    a, b, s = cheb_pair(n), cheb_pair(m), cheb_pair(n + m)
    fails = []
    dc = s.c - (T * a.c * b.c + a.c * b.d + a.d * b.c)
    if not dc.is_zero():
        fails.append(("c", dc))
    dd = s.d - (a.d * b.d - a.c * b.c)
    if not dd.is_zero():
        fails.append(("d", dd))
    return IdentityCheck(f"product({n},{m})", not fails, fails)


@lru_cache(maxsize=8192)
def _composed_c(j: int, n_abs: int) -> IntPoly:
    """c_j(tr M^n) for j >= 0; tr M^n = t c_n + 2 d_n depends on |n| only."""
    a = cheb_pair(n_abs)
    return c_poly(j).compose(T * a.c + 2 * a.d)


def _composed(m: int, n_abs: int):
    """(c_m(T), d_m(T)); every c_m, d_m is +-c_j for some j >= 0 as a polynomial."""
    if m >= 1:
        return _composed_c(m, n_abs), -_composed_c(m - 1, n_abs)
    if m == 0:
        return ZERO, ONE
    return -_composed_c(-m, n_abs), _composed_c(-m + 1, n_abs)


def cheb_compose(n: int, m: int) -> IdentityCheck:
    """c_{nm} = c_m(T) c_n and d_{nm} = c_m(T) d_n + d_m(T), T = t c_n + 2 d_n.

    The first identity exhibits c_m(T) as the quotient c_{nm} / c_n, so the
    divisibility c_n | c_{nm} is only checked separately when it fails.
    """
    a, s = cheb_pair(n), cheb_pair(n * m)
    inner = T * a.c + 2 * a.d
    fails = []
    if inner != T * cheb_pair(abs(n)).c + 2 * cheb_pair(abs(n)).d:
        fails.append(("tr M^n = tr M^-n", inner))
    cm_in, dm_in = _composed(m, abs(n))
    dc = s.c - cm_in * a.c
    if not dc.is_zero():
        fails.append(("c", dc))
        if not a.c.is_zero():
            _, r = s.c.divmod_exact(a.c)
            if not r.is_zero():
                fails.append(("c_n | c_nm", r))
        elif not s.c.is_zero():
            fails.append(("c_n | c_nm", s.c))
    dd = s.d - (cm_in * a.d + dm_in)
    if not dd.is_zero():
        fails.append(("d", dd))
    return IdentityCheck(f"compose({n},{m})", not fails, fails)


def _qpoly(p: IntPoly) -> fmpq_poly:
    return fmpq_poly([int(c) for c in p.coeffs])


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """gcd over Q by the Euclidean algorithm, returned as a primitive integer
    polynomial with positive leading coefficient."""
    a, b = _qpoly(f), _qpoly(g)
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return ZERO
    coeffs = [fmpq(c) for c in a.coeffs()]
    den = 1
    for c in coeffs:
        den = den * int(c.q) // gcd(den, int(c.q))
    ints = [int(c.p) * (den // int(c.q)) for c in coeffs]
    cont = 0
    for c in ints:
        cont = gcd(cont, c)
    ints = [c // cont for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPoly(ints)


def cheb_gcd(n: int, m: int) -> IntPoly:
    """gcd(c_n, c_m), which equals c_{gcd(n, m)} up to sign."""
    if n == 0 and m == 0:
        raise ValueError("cheb_gcd needs n, m not both zero")
    g = poly_gcd(c_poly(n), c_poly(m))
    expected = c_poly(gcd(n, m))
    if g != expected and g != -expected:
        raise ArithmeticError(f"gcd(c_{n}, c_{m}) = {g} differs from c_{gcd(n, m)} = {expected}")
    return g


def cheb_root_traces(n: int):
    """Roots of c_n as traces zeta_{2n}^k + zeta_{2n}^{-k}, k = 1..|n|-1."""
    from .cyclo import RootTrace

    if n == 0:
        raise ValueError("c_0 = 0 has no root list")
    n = abs(n)
    return [RootTrace.of(2 * n, k) for k in range(1, n)]


def is_squarefree(p: IntPoly) -> bool:
    if p.degree() <= 0:
        return True
    return poly_gcd(p, p.derivative()).degree() == 0


def gcd_check(n: int, m: int) -> IdentityCheck:
    try:
        cheb_gcd(n, m)
    except ArithmeticError as e:
        return IdentityCheck(f"gcd({n},{m})", False, [(str(e), ZERO)])
    return IdentityCheck(f"gcd({n},{m})", True)


def root_check(n: int) -> IdentityCheck:
    """c_n vanishes exactly at every zeta_{2n}^k + zeta_{2n}^-k, 0 < k < n."""
    fails = []
    c = c_poly(n)
    for r in cheb_root_traces(n):
        v = c(r.value)
        if not v.is_zero():
            fails.append((f"c_{n}({r.label()})", ZERO))
    return IdentityCheck(f"roots({n})", not fails, fails)


def identity_suite(bound: int, root_bound: int | None = None) -> list[IdentityCheck]:
    """Determinant, product, composition and gcd identities for |n|, |m| <= bound
    plus root evaluations for 1 <= n <= root_bound."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    root_bound = min(bound, 24) if root_bound is None else root_bound
    rng = range(-bound, bound + 1)
    out = [determinant_check(n) for n in rng]
    for n in rng:
        for m in rng:
            out.append(cheb_product(n, m))
            out.append(cheb_compose(n, m))
            if n or m:
                out.append(gcd_check(n, m))
    out.extend(root_check(n) for n in range(1, root_bound + 1))
    return out
