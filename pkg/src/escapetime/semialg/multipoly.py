"""Sparse multivariate polynomials with integer coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..core.rational import bitsize
from ..errors import ParseError


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, dict) else ((tuple(e), c) for c, e in terms)
        t: dict = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent vector {e} does not have {nvars} entries")
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError("MultiPoly coefficients must be integers")
                c = c.numerator
            t[e] = t.get(e, 0) + int(c)
        self.terms = {e: c for e, c in t.items() if c}

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, nvars: int, c: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "MultiPoly":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def from_univariate(cls, nvars: int, i: int, coeffs: Sequence[int]) -> "MultiPoly":
        out = {}
        for k, c in enumerate(coeffs):
            e = [0] * nvars
            e[i] = k
            out[tuple(e)] = c
        return cls(nvars, out)

    # -- measures -------------------------------------------------------
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coeff_bitsize(self) -> int:
        return max((bitsize(c) for c in self.terms.values()), default=1)

    def is_zero(self) -> bool:
        return not self.terms

    # -- arithmetic -----------------------------------------------------
    def __add__(self, o) -> "MultiPoly":
        if not isinstance(o, MultiPoly):
            o = MultiPoly.const(self.nvars, int(o))
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return MultiPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o) -> "MultiPoly":
        if not isinstance(o, MultiPoly):
            o = MultiPoly.const(self.nvars, int(o))
        return self + (-o)

    def __rsub__(self, o) -> "MultiPoly":
        return MultiPoly.const(self.nvars, o) - self

    def __mul__(self, o) -> "MultiPoly":
        if not isinstance(o, MultiPoly):
            o = int(o)
            return MultiPoly(self.nvars, {e: c * o for e, c in self.terms.items()})
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def compose(self, images: Sequence["MultiPoly"], nvars: int) -> "MultiPoly":
        """Substitute x_i -> images[i] (each over nvars variables)."""
        out = MultiPoly(nvars, {})
        cache: dict = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(nvars, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            out = out + term
        return out

    # -- evaluation -----------------------------------------------------
    def __call__(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        acc = 0
        pw: dict = {}
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    v = pw.get((i, k))
                    if v is None:
                        v = pw[(i, k)] = point[i] ** k
                    term = term * v
            acc = acc + term
        return acc

    def eval_scaled_int(self, point: Sequence[Fraction]) -> int:
        """Integer with the sign of P(point): clears the common denominator first."""
        from math import lcm

        den = 1
        for x in point:
            den = lcm(den, Fraction(x).denominator)
        nums = [int(Fraction(x) * den) for x in point]
        d = self.total_degree()
        acc = 0
        for e, c in self.terms.items():
            t = c * den ** (d - sum(e))
            for i, k in enumerate(e):
                if k:
                    t *= nums[i] ** k
            acc += t
        return acc

    # -- misc -----------------------------------------------------------
    def __eq__(self, o) -> bool:
        return isinstance(o, MultiPoly) and self.nvars == o.nvars and self.terms == o.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.to_json()})"

    def to_json(self) -> list:
        return [[c, list(e)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, nvars: int, data) -> "MultiPoly":
        if not isinstance(data, list):
            raise ParseError("poly must be a list of [coef, exponents] pairs")
        terms = []
        for item in data:
            if (
                not isinstance(item, list)
                or len(item) != 2
                or not isinstance(item[1], list)
                or len(item[1]) != nvars
                or not all(isinstance(x, int) and x >= 0 for x in item[1])
            ):
                raise ParseError(f"bad monomial {item!r}")
            c = item[0]
            if isinstance(c, str):
                try:
                    c = int(c)
                except ValueError as exc:
                    raise ParseError(f"bad coefficient {c!r}") from exc
            if not isinstance(c, int) or isinstance(c, bool):
                raise ParseError(f"bad coefficient {c!r}")
            terms.append((c, item[1]))
        return cls(nvars, terms)
