"""Univariate integer polynomials, plus a few helpers over the rationals.

Coefficients are stored lowest degree first, matching the JSON form.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from ..errors import ParseError
from .rational import bitsize


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = []
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                else:
                    raise TypeError(f"integer coefficient expected, got {c!r}")
            cs.append(int(c))
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- construction -------------------------------------------------
    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def from_rationals(cls, coeffs: Sequence) -> "IntPolynomial":
        """Primitive integer multiple of a rational polynomial (sign kept)."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        return cls(int(c * den) for c in fr).primitive_part(keep_sign=True)

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def height(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    @property
    def bitsize(self) -> int:
        return max((bitsize(c) for c in self.coeffs), default=1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive_part(self, keep_sign: bool = False) -> "IntPolynomial":
        g = self.content()
        if g == 0:
            return self
        if not keep_sign and self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    # -- arithmetic ---------------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def scale_var(self, num: int, den: int = 1) -> "IntPolynomial":
        """den**deg * p(num*x/den): integer polynomial whose roots are den/num times ours."""
        d = self.degree
        return IntPolynomial(c * num**i * den ** (d - i) for i, c in enumerate(self.coeffs))

    def reflect(self) -> "IntPolynomial":
        """p(-x)."""
        return IntPolynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def squarefree_part(self) -> "IntPolynomial":
        if self.degree <= 0:
            return self.primitive_part()
        g = q_gcd(list(self.coeffs), list(self.derivative().coeffs))
        quo, _ = q_divmod(list(self.coeffs), g)
        return IntPolynomial.from_rationals(quo).primitive_part()

    # -- misc ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                t = mono
            else:
                t = f"{abs(c)}{'*' if mono else ''}{mono}"
            terms.append(("-" if c < 0 else "+", t))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s

    def to_json(self) -> list:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data) -> "IntPolynomial":
        if not isinstance(data, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in data):
            raise ParseError("polynomial must be a list of integers")
        return cls(data)


# ---------------------------------------------------------------------------
# polynomials over Q as lists of Fractions (lowest degree first)


def q_trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def q_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = q_trim([Fraction(c) for c in a])
    b = q_trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lb
        quo[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a.pop()
        a = q_trim(a)
    return quo, a


def q_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q."""
    a = q_trim([Fraction(c) for c in a])
    b = q_trim([Fraction(c) for c in b])
    while b:
        _, r = q_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def q_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return q_trim(out)


def q_add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return q_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def q_scale(a: Sequence, s) -> list:
    return q_trim([c * s for c in a])


def q_eval(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def q_extended_gcd(a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = q_trim([Fraction(c) for c in a]), q_trim([Fraction(c) for c in b])
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = q_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, q_add(s0, q_scale(q_mul(q, s1), -1))
        t0, t1 = t1, q_add(t0, q_scale(q_mul(q, t1), -1))
    lc = r0[-1]
    return [c / lc for c in r0], [c / lc for c in s0], [c / lc for c in t0]
