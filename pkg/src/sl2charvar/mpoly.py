"""Sparse multivariate polynomials over Q in the eleven trace variables.

Variables: x, y, z and the formal values g_* (gamma) and d_* (delta) of
c_n, d_n attached to the four exponents n1, m1, n2, m2.
"""

from __future__ import annotations

import re
from fractions import Fraction

VARS = ("x", "y", "z", "g_n1", "d_n1", "g_m1", "d_m1", "g_n2", "d_n2", "g_m2", "d_m2")
NVARS = len(VARS)
VAR_INDEX = {v: i for i, v in enumerate(VARS)}
_ZERO_EXP = (0,) * NVARS


def _unit(i: int) -> tuple[int, ...]:
    e = [0] * NVARS
    e[i] = 1
    return tuple(e)


class MPoly:
    """Polynomial as a dict from exponent tuples to nonzero Fractions."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[e] = Fraction(c)

    @classmethod
    def var(cls, name: str) -> MPoly:
        return cls({_unit(VAR_INDEX[name]): Fraction(1)})

    @classmethod
    def const(cls, c) -> MPoly:
        return cls({_ZERO_EXP: Fraction(c)}) if c else cls()

    @classmethod
    def parse(cls, text: str) -> MPoly:
        return _Parser(text).parse()

    def copy(self) -> MPoly:
        p = MPoly()
        p.terms = dict(self.terms)
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> set[str]:
        out = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    out.add(VARS[i])
        return out

    @staticmethod
    def _coerce(other) -> MPoly:
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other)
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        p = MPoly()
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MPoly()
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly()
            p = MPoly()
            p.terms = {e: c * other for e, c in self.terms.items()}
            return p
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        p = MPoly()
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def evaluate(self, values: dict):
        """Substitute ring elements for variables; missing variables must not occur.

        values maps variable names to anything supporting +, * and ** with ints.
        """
        total = 0
        for e, c in self.terms.items():
            term = c if c.denominator != 1 else int(c)
            for i, k in enumerate(e):
                if k:
                    term = term * (values[VARS[i]] ** k)
            total = total + term
        return total

    def substitute(self, mapping: dict[str, MPoly]) -> MPoly:
        """Replace variables by polynomials."""
        total = MPoly()
        cache: dict = {}
        for e, c in self.terms.items():
            term = MPoly.const(c)
            for i, k in enumerate(e):
                if not k:
                    continue
                name = VARS[i]
                if name in mapping:
                    key = (name, k)
                    if key not in cache:
                        cache[key] = mapping[name] ** k
                    term = term * cache[key]
                else:
                    term = term * MPoly({tuple(k if j == i else 0 for j in range(NVARS)): 1})
            total = total + term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        order = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        out = ""
        for e in order:
            c = self.terms[e]
            mono = "*".join(VARS[i] if k == 1 else f"{VARS[i]}^{k}" for i, k in enumerate(e) if k)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    __repr__ = __str__


X, Y, Z = MPoly.var("x"), MPoly.var("y"), MPoly.var("z")


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


class _Parser:
    """Recursive descent over + - * ^ ** and parentheses."""

    def __init__(self, text: str):
        self.text = text.replace("−", "-")
        self.tokens = []
        pos = 0
        s = self.text.rstrip()
        while pos < len(s):
            m = _TOKEN.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", Fraction(num)))
            elif name is not None:
                if name not in VAR_INDEX:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                self.tokens.append(("var", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> MPoly:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing input in {self.text!r}")
        return p

    def expr(self) -> MPoly:
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                p = p + t if val == "+" else p - t
            else:
                return p

    def term(self) -> MPoly:
        p = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.power()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                p = p * self.power()
            else:
                return p

    def power(self) -> MPoly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, e = self.take()
            if k != "num" or e.denominator != 1:
                raise ValueError(f"bad exponent in {self.text!r}")
            return base ** int(e)
        return base

    def atom(self) -> MPoly:
        kind, val = self.take()
        if kind == "num":
            return MPoly.const(val)
        if kind == "var":
            return MPoly.var(val)
        if kind == "op" and val == "(":
            p = self.expr()
            k, v = self.take()
            if (k, v) != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {self.text!r}")
            return p
        if kind == "op" and val == "-":
            return -self.atom()
        raise ValueError(f"unexpected token in {self.text!r}")
