"""Arithmetic in Q[y]/(f) for an irreducible f."""
from __future__ import annotations

from fractions import Fraction

from ..core.poly import IntPolynomial, q_extended_gcd, q_mul


class NumberField:
    def __init__(self, f: IntPolynomial):
        self.f = f
        self.D = f.degree
        lc = f.leading
        self.monic = [Fraction(c, lc) for c in f.coeffs]
        # reduction rows for y^k, k = D .. 2D-2
        self._red = {}
        row = [-c for c in self.monic[:-1]]  # y^D
        for k in range(self.D, 2 * self.D - 1):
            self._red[k] = row
            # y^(k+1) = y * row
            top = row[-1]
            row = [Fraction(0)] + row[:-1]
            row = [a + top * b for a, b in zip(row, [-c for c in self.monic[:-1]])]

    def reduce(self, coeffs) -> tuple:
        c = list(coeffs)
        D = self.D
        out = c[:D] + [Fraction(0)] * max(0, D - len(c))
        for k in range(D, len(c)):
            if c[k]:
                red = self._red[k] if k in self._red else self._power_row(k)
                for i in range(D):
                    out[i] += c[k] * red[i]
        return tuple(out)

    def _power_row(self, k: int):
        base = [Fraction(0)] * self.D
        base[0] = Fraction(1)
        acc = tuple(base)
        gen = self.gen().c
        for _ in range(k):
            acc = self.reduce(q_mul(list(acc), list(gen)) or [0])
        self._red[k] = list(acc)
        return self._red[k]

    def elem(self, coeffs) -> "NFElem":
        return NFElem(self, self.reduce([Fraction(x) for x in coeffs]))

    def const(self, q) -> "NFElem":
        return NFElem(self, tuple([Fraction(q)] + [Fraction(0)] * (self.D - 1)))

    def zero(self) -> "NFElem":
        return self.const(0)

    def one(self) -> "NFElem":
        return self.const(1)

    def gen(self) -> "NFElem":
        if self.D == 1:
            return self.const(-self.monic[0])
        c = [Fraction(0)] * self.D
        c[1] = Fraction(1)
        return NFElem(self, tuple(c))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.f == other.f

    def __hash__(self):
        return hash(self.f)


class NFElem:
    __slots__ = ("K", "c")

    def __init__(self, K: NumberField, c: tuple):
        self.K, self.c = K, c

    def _lift(self, o) -> "NFElem":
        if isinstance(o, NFElem):
            return o
        return self.K.const(o)

    def __add__(self, o):
        o = self._lift(o)
        return NFElem(self.K, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.K, tuple(-a for a in self.c))

    def __sub__(self, o):
        o = self._lift(o)
        return NFElem(self.K, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return NFElem(self.K, tuple(a * o for a in self.c))
        o = self._lift(o)
        D = self.K.D
        prod = [Fraction(0)] * (2 * D - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return NFElem(self.K, self.K.reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        g, s, _ = q_extended_gcd(list(self.c), self.K.monic)
        # s*self + t*f = 1
        return self.K.elem(s)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.c)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = self.K.const(o)
        return isinstance(o, NFElem) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"NFElem({[str(x) for x in self.c]})"
