"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements live in the power basis modulo Phi_N.  Conductors are kept away
from 2 mod 4 (Q(zeta_{2M}) = Q(zeta_M) for odd M), arithmetic lifts both
operands to the lcm of their conductors, and hashing or serialization go
through the minimal conductor so equal numbers always look the same.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from flint import fmpq, fmpq_poly, fmpz, fmpz_poly


def normalize_conductor(n: int) -> int:
    if n <= 0:
        raise ValueError("conductor must be positive")
    return n // 2 if n % 4 == 2 else n


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def _phi_poly(n: int) -> fmpq_poly:
    return fmpq_poly(fmpz_poly.cyclotomic(n))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return _phi_poly(n).degree()


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    return tuple(int(p) for p, _ in fmpz(n).factor()) if n > 1 else ()


@lru_cache(maxsize=None)
def units_mod(n: int) -> tuple[int, ...]:
    return tuple(j for j in range(1, n + 1) if gcd(j, n) == 1) if n > 1 else (1,)


def _to_fmpq(q) -> fmpq:
    if isinstance(q, fmpq):
        return q
    if isinstance(q, int):
        return fmpq(q)
    q = Fraction(q)
    return fmpq(q.numerator, q.denominator)


def _to_fraction(q: fmpq) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def _poly_from_exponents(n: int, terms) -> fmpq_poly:
    """Sum of c * X^e over (e, c) pairs, exponents taken mod n."""
    buf = [fmpq(0)] * n
    for e, c in terms:
        buf[e % n] += c
    return fmpq_poly(buf)


def _rep_at(n: int, terms) -> tuple[int, fmpq_poly]:
    """Reduce sum c * zeta_n^e to the normalized conductor of n."""
    if n % 4 == 2:
        m = n // 2
        # zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
        h = (m + 1) // 2
        terms = [(e * h, -c if e % 2 else c) for e, c in terms]
        n = m
    return n, _poly_from_exponents(n, terms) % _phi_poly(n)


class CycloElt:
    """An element of Q(zeta_N), N the conductor (never 2 mod 4)."""

    __slots__ = ("_n", "_p", "_canon")

    def __init__(self, conductor: int, poly: fmpq_poly, _reduced: bool = False):
        conductor = int(conductor)
        if conductor % 4 == 2:
            n, p = _rep_at(conductor, enumerate(poly.coeffs()))
        else:
            n = conductor
            p = poly if _reduced else poly % _phi_poly(conductor)
        self._n = n
        self._p = p
        self._canon = None

    @classmethod
    def rational(cls, q, conductor: int = 1) -> CycloElt:
        return cls(normalize_conductor(conductor), fmpq_poly([_to_fmpq(q)]), True)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CycloElt:
        """zeta_n^k with zeta_n = exp(2 pi i / n)."""
        n = int(n)
        if n <= 0:
            raise ValueError("root of unity order must be positive")
        m, p = _rep_at(n, [(k % n, fmpq(1))])
        return cls(m, p, True)

    @classmethod
    def from_coeffs(cls, conductor: int, coeffs) -> CycloElt:
        return cls(conductor, fmpq_poly([_to_fmpq(c) for c in coeffs]))

    @classmethod
    def from_json(cls, data: dict) -> CycloElt:
        return cls.from_coeffs(int(data["conductor"]), [Fraction(c) for c in data["coeffs"]])

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def poly(self) -> fmpq_poly:
        return self._p

    def coeffs(self) -> list[Fraction]:
        """Power basis coefficients, padded to length phi(N)."""
        out = [_to_fraction(c) for c in self._p.coeffs()]
        out += [Fraction(0)] * (euler_phi(self._n) - len(out))
        return out

    def lift(self, n: int) -> CycloElt:
        """The same number written in Q(zeta_n); n must be a multiple of the conductor."""
        n = normalize_conductor(n)
        if n == self._n:
            return self
        if n % self._n:
            raise ValueError(f"cannot lift conductor {self._n} to {n}")
        r = n // self._n
        cs = self._p.coeffs()
        if not cs:
            return CycloElt(n, fmpq_poly([]), True)
        buf = [fmpq(0)] * ((len(cs) - 1) * r + 1)
        for i, c in enumerate(cs):
            buf[i * r] = c
        return CycloElt(n, fmpq_poly(buf))

    @staticmethod
    def _coerce(x) -> CycloElt:
        if isinstance(x, CycloElt):
            return x
        if isinstance(x, (int, Fraction, fmpq)):
            return CycloElt.rational(x)
        return NotImplemented

    def _common(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return None, None, None
        if other._n == self._n:
            return self._n, self._p, other._p
        n = _lcm(self._n, other._n)
        return n, self.lift(n)._p, other.lift(n)._p

    def __add__(self, other):
        n, a, b = self._common(other)
        if n is None:
            return NotImplemented
        return CycloElt(n, a + b, True)

    __radd__ = __add__

    def __sub__(self, other):
        n, a, b = self._common(other)
        if n is None:
            return NotImplemented
        return CycloElt(n, a - b, True)

    def __rsub__(self, other):
        n, a, b = self._common(other)
        if n is None:
            return NotImplemented
        return CycloElt(n, b - a, True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElt(self._n, self._p * _to_fmpq(other), True)
        n, a, b = self._common(other)
        if n is None:
            return NotImplemented
        return CycloElt(n, a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return CycloElt(self._n, -self._p, True)

    def inverse(self) -> CycloElt:
        if self._p.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        g, s, _ = fmpq_poly.xgcd(self._p, _phi_poly(self._n))
        # g is a nonzero constant because Phi_N is irreducible
        return CycloElt(self._n, s * (1 / g[0]))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in a cyclotomic field")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElt.rational(1, self._n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    def is_rational(self) -> bool:
        return self._p.degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return _to_fraction(self._p[0])

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, CycloElt):
            return NotImplemented
        n, a, b = self._common(other)
        return a == b

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c._n, tuple((int(x.p), int(x.q)) for x in c._p.coeffs())))

    def galois(self, j: int) -> CycloElt:
        """sigma_j: zeta_N -> zeta_N^j for j coprime to N."""
        n = self._n
        if gcd(j, n) != 1:
            raise ValueError(f"sigma_{j} is not an automorphism of Q(zeta_{n})")
        if n == 1:
            return self
        terms = [(i * j, c) for i, c in enumerate(self._p.coeffs())]
        return CycloElt(n, _poly_from_exponents(n, terms))

    def conj(self) -> CycloElt:
        return self.galois(-1 % self._n if self._n > 1 else 1)

    # descent to the minimal conductor

    def _descend_once(self):
        n = self._n
        for p in prime_factors(n):
            m = n // p
            cs = self._p.coeffs()
            if m % p == 0:
                if all(c == 0 for i, c in enumerate(cs) if i % p):
                    return CycloElt(m, fmpq_poly(cs[::p]))
                continue
            if p == 2:
                # only reachable for n = 4 * odd... handled above, or n = 2 excluded
                continue
            # n = p*m with gcd(p, m) = 1: zeta_n = zeta_m^alpha zeta_p^beta
            alpha = pow(p, -1, m) if m > 1 else 0
            beta = pow(m, -1, p)
            groups = [[] for _ in range(p)]
            for i, c in enumerate(cs):
                if c != 0:
                    groups[(beta * i) % p].append((alpha * i, c))
            mm = max(m, 1)
            g = [_poly_from_exponents(mm, grp) % _phi_poly(mm) for grp in groups]
            last = g[p - 1]
            if all((g[r] - last).is_zero() for r in range(1, p - 1)):
                return CycloElt(m, g[0] - last)
        return None

    def canonical(self) -> CycloElt:
        """The same number at its minimal conductor."""
        if self._canon is not None:
            return self._canon
        cur = self
        while True:
            nxt = cur._descend_once()
            if nxt is None:
                break
            cur = nxt
        cur._canon = cur
        self._canon = cur
        return cur

    def to_json(self) -> dict:
        c = self.canonical()
        return {"conductor": c._n, "coeffs": [_frac_str(q) for q in c.coeffs()]}

    def __repr__(self) -> str:
        c = self.canonical()
        if c.is_rational():
            return f"CycloElt({c.to_fraction()})"
        terms = []
        for i, q in enumerate(c.coeffs()):
            if q:
                terms.append(f"{q}*z^{i}" if i else f"{q}")
        return f"CycloElt[{c._n}](" + " + ".join(terms) + ")"

    # field invariants

    def conjugates(self) -> list[CycloElt]:
        """The distinct Galois conjugates, computed at the minimal conductor."""
        c = self.canonical()
        seen = {}
        for j in units_mod(c._n):
            s = c.galois(j)
            key = tuple(s._p.coeffs())
            if key not in seen:
                seen[key] = s
        return list(seen.values())

    def norm(self, conductor: int | None = None) -> Fraction:
        """Norm from Q(zeta_N) down to Q, N = conductor (default: own conductor)."""
        a = self if conductor is None else self.lift(conductor)
        prod = CycloElt.rational(1, a._n)
        for j in units_mod(a._n):
            prod = prod * a.galois(j)
        return prod.to_fraction()

    def min_poly(self) -> list[Fraction]:
        """Monic minimal polynomial over Q, ascending coefficients."""
        roots = self.conjugates()
        coeffs = [CycloElt.rational(1, self.canonical()._n)]
        for r in roots:
            # multiply by (X - r)
            new = [None] * (len(coeffs) + 1)
            new[len(coeffs)] = coeffs[-1]
            for k in range(len(coeffs) - 1, 0, -1):
                new[k] = coeffs[k - 1] - r * coeffs[k]
            new[0] = -(r * coeffs[0])
            coeffs = new
        out = []
        for c in coeffs:
            if not c.is_rational():
                raise ArithmeticError("conjugate product has irrational coefficients")
            out.append(c.to_fraction())
        return out

    def is_algebraic_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.min_poly())


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


ZERO = CycloElt.rational(0)
ONE = CycloElt.rational(1)


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """zeta_order^exponent with gcd(exponent, order) = 1, so order is exact."""

    order: int
    exponent: int

    @classmethod
    def of(cls, order: int, k: int) -> RootOfUnity:
        if order <= 0:
            raise ValueError("order must be positive")
        k %= order
        g = gcd(k, order)
        return cls(order // g, k // g) if k else cls(1, 0)

    def element(self) -> CycloElt:
        return CycloElt.zeta(self.order, self.exponent)

    def inverse(self) -> RootOfUnity:
        return RootOfUnity.of(self.order, -self.exponent)

    def power(self, e: int) -> RootOfUnity:
        return RootOfUnity.of(self.order, self.exponent * e)

    def is_pm_one(self) -> bool:
        return self.order <= 2

    def galois(self, j: int) -> RootOfUnity:
        return RootOfUnity.of(self.order, self.exponent * j)

    def label(self) -> str:
        return f"zeta_{self.order}^{self.exponent}"


@dataclass(frozen=True, order=True)
class RootTrace:
    """The trace lambda + 1/lambda of a root of unity lambda.

    Stored with 0 <= exponent <= order/2, so lambda and 1/lambda give the
    same descriptor.
    """

    order: int
    exponent: int

    @classmethod
    def of(cls, order: int, k: int) -> RootTrace:
        r = RootOfUnity.of(order, k)
        e = min(r.exponent, r.order - r.exponent) if r.order > 1 else 0
        return cls(r.order, e)

    @classmethod
    def from_root(cls, r: RootOfUnity) -> RootTrace:
        return cls.of(r.order, r.exponent)

    @property
    def root(self) -> RootOfUnity:
        return RootOfUnity(self.order, self.exponent)

    @property
    def value(self) -> CycloElt:
        return _trace_value(self.order, self.exponent)

    def galois(self, j: int) -> RootTrace:
        return RootTrace.of(self.order, self.exponent * j)

    def label(self) -> str:
        if self.order == 1:
            return "2"
        if self.order == 2:
            return "-2"
        return f"zeta_{self.order}^{self.exponent}+zeta_{self.order}^-{self.exponent}"

    def to_json(self) -> dict:
        return {"order": self.order, "exponent": self.exponent, "value": self.value.to_json()}


@lru_cache(maxsize=None)
def _trace_value(order: int, k: int) -> CycloElt:
    z = CycloElt.zeta(order, k)
    return (z + z.inverse()).canonical()


def traces_of_order_dividing(n: int) -> list[RootTrace]:
    """All traces lambda + 1/lambda with lambda^n = 1, one per inverse pair."""
    n = abs(n)
    if n == 0:
        raise ValueError("order bound must be nonzero")
    out = {RootTrace.of(n, k) for k in range(n)}
    return sorted(out)


def fraction_valuation(q: Fraction, ell: int) -> int:
    if q == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = q.numerator, q.denominator
    while num % ell == 0:
        num //= ell
        v += 1
    while den % ell == 0:
        den //= ell
        v -= 1
    return v


@dataclass(frozen=True)
class ValuationReport:
    """Valuations of the conjugates of an algebraic number at a prime ell.

    slopes holds one entry per root of the minimal polynomial (so it is a
    multiset), normalized so that ell itself has valuation 1.
    """

    prime: int
    slopes: tuple[Fraction, ...]

    @property
    def is_integral_somewhere(self) -> bool:
        return any(s >= 0 for s in self.slopes)

    @property
    def is_integral_everywhere(self) -> bool:
        return all(s >= 0 for s in self.slopes)

    def distinct(self) -> list[Fraction]:
        return sorted(set(self.slopes))

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "slopes": [_frac_str(s) for s in self.slopes],
            "integral_somewhere": self.is_integral_somewhere,
            "integral_everywhere": self.is_integral_everywhere,
        }


def lower_hull(points):
    """Lower convex hull of points sorted by x, returned left to right."""
    hull = []
    for p in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_slopes(coeffs, ell: int) -> tuple[Fraction, ...]:
    """Root valuations at ell of the polynomial with ascending coeffs.

    Each segment of slope s and horizontal length L contributes L roots of
    valuation -s.  The constant term must be nonzero.
    """
    coeffs = [Fraction(c) for c in coeffs]
    if not coeffs or coeffs[0] == 0:
        raise ValueError("Newton polygon needs a nonzero constant term")
    pts = [(i, Fraction(fraction_valuation(c, ell))) for i, c in enumerate(coeffs) if c != 0]
    hull = lower_hull(pts)
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = (y2 - y1) / (x2 - x1)
        out.extend([-s] * (x2 - x1))
    return tuple(sorted(out))


def primitive_integer_poly(coeffs) -> list[int]:
    """Scale rational coefficients to a primitive integer vector."""
    coeffs = [Fraction(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    cont = 0
    for c in ints:
        cont = gcd(cont, c)
    return [c // cont for c in ints] if cont else ints


def valuations_above(a: CycloElt, ell: int) -> ValuationReport:
    """Newton polygon valuations at ell of the conjugates of a."""
    if a.is_zero():
        raise ValueError("valuations of zero are undefined")
    mp = primitive_integer_poly(a.min_poly())
    return ValuationReport(ell, newton_slopes(mp, ell))


def norm_valuation(a: CycloElt, ell: int, conductor: int | None = None) -> Fraction:
    """nu_ell(Nm(a)) / [Q(zeta_N):Q]; the unique valuation when ell is the only
    ramified prime with one place above it."""
    if a.is_zero():
        raise ValueError("valuation of zero")
    n = normalize_conductor(conductor) if conductor else a.conductor
    return Fraction(fraction_valuation(a.norm(n), ell), euler_phi(n))


def denominator_primes(a: CycloElt) -> list[int]:
    """Primes dividing a denominator of the minimal polynomial of a."""
    den = 1
    for c in a.min_poly():
        den = den * c.denominator // gcd(den, c.denominator)
    return list(prime_factors(den))


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == (n,) and n == prime_factors(n)[0]
