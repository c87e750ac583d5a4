"""Symbolic nonnegative magnitudes with rigorous interval evaluation.

A ``Mag`` is an immutable expression tree. Values are enclosed with
``mpmath.iv`` (outward rounded, arbitrary exponent range), so towers such
as 2^(2^200) stay cheap. Comparisons refine the enclosure until the two
sides separate; ties are settled by an exact evaluator that understands
rationals and integer powers of a single logarithm, which is enough to see
that ln 8 / ln 2 is exactly 3.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from fractions import Fraction
from functools import cached_property

import mpmath
from mpmath import iv, libmp
from sympy import factorint, perfect_power

from ..core.rational import fmt_rational, parse_rational, to_fraction
from ..core import roots as _roots
from ..errors import ParseError, Undecided

_UNARY = ("ln", "log2", "ceil")
_NARY = ("add", "mul", "max", "min")
_BINARY = ("div", "pow")

# exact powers are only materialized below this many bits
_EXACT_BITS = 1 << 20


class Mag:
    __slots__ = ("op", "args", "value", "__dict__")

    def __init__(self, op: str, args: tuple = (), value: Fraction | None = None):
        self.op = op
        self.args = tuple(args)
        self.value = value

    # -- construction -------------------------------------------------------

    @staticmethod
    def const(q) -> "Mag":
        q = to_fraction(q)
        if q < 0:
            raise ValueError("magnitudes are nonnegative")
        return Mag("const", value=q)

    @staticmethod
    def alg(a) -> "Mag":
        """A real algebraic leaf; rationals collapse to constants."""
        if a.is_rational():
            return Mag.const(a.as_fraction())
        if not a.is_real() or a.sign() < 0:
            raise ValueError("algebraic magnitudes must be real and nonnegative")
        return Mag("alg", value=a)

    @staticmethod
    def pi() -> "Mag":
        return Mag("pi")

    @staticmethod
    def e() -> "Mag":
        return Mag("e")

    def __add__(self, other):
        return Mag("add", (self, mag(other)))

    __radd__ = __add__

    def __mul__(self, other):
        return Mag("mul", (self, mag(other)))

    def __rmul__(self, other):
        return Mag("mul", (mag(other), self))

    def __truediv__(self, other):
        return Mag("div", (self, mag(other)))

    def __rtruediv__(self, other):
        return Mag("div", (mag(other), self))

    def __pow__(self, other):
        return Mag("pow", (self, mag(other)))

    def __rpow__(self, other):
        return Mag("pow", (mag(other), self))

    # -- structure ----------------------------------------------------------

    @cached_property
    def _key(self):
        if self.op == "const":
            return ("const", self.value)
        if self.op == "alg":
            return ("alg", self.value.minpoly.coeffs, self.value.index)
        return (self.op,) + tuple(a._key for a in self.args)

    def same_tree(self, other: "Mag") -> bool:
        return self._key == other._key

    def factors(self) -> list["Mag"]:
        """Flattened multiplicands of a product tree."""
        if self.op != "mul":
            return [self]
        out = []
        for a in self.args:
            out.extend(a.factors())
        return out

    def __str__(self) -> str:
        op = self.op
        if op == "const":
            txt = fmt_rational(self.value)
            return f"({txt})" if self.value.denominator != 1 else txt
        if op in ("pi", "e"):
            return op
        if op == "alg":
            return f"root[{self.value.minpoly}; {self.value.index}]"
        if op in _UNARY:
            return f"{op}({self.args[0]})"
        if op in ("max", "min"):
            return f"{op}(" + ", ".join(str(a) for a in self.args) + ")"
        sym = {"add": " + ", "mul": "*", "div": "/", "pow": "^"}[op]
        return "(" + sym.join(str(a) for a in self.args) + ")"

    def __repr__(self) -> str:
        return f"Mag({self})"

    def to_json(self) -> dict:
        if self.op == "const":
            return {"op": "const", "value": fmt_rational(self.value)}
        if self.op in ("pi", "e"):
            return {"op": self.op}
        if self.op == "alg":
            return {"op": "alg", "value": self.value.to_json()}
        return {"op": self.op, "args": [a.to_json() for a in self.args]}

    @staticmethod
    def from_json(obj) -> "Mag":
        try:
            op = obj["op"]
            if op == "const":
                return Mag.const(parse_rational(obj["value"]))
            if op in ("pi", "e"):
                return Mag(op)
            if op == "alg":
                from ..core.algebraic import AlgebraicNumber
                return Mag.alg(AlgebraicNumber.from_json(obj["value"]))
            args = tuple(Mag.from_json(a) for a in obj["args"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad magnitude node {obj!r}") from exc
        if op in _UNARY and len(args) == 1 or op in _BINARY and len(args) == 2 \
                or op in _NARY and len(args) >= 1:
            return Mag(op, args)
        raise ParseError(f"bad magnitude node {obj!r}")

    # -- interval evaluation ------------------------------------------------

    def enclose(self, prec: int = 64):
        """An ``iv.mpf`` enclosure computed at working precision ``prec``."""
        cache = self.__dict__.setdefault("_encl", {})
        hit = cache.get(prec)
        if hit is None:
            with _ivprec(prec):
                hit = cache[prec] = self._eval(prec)
        return hit

    def _eval(self, prec):
        op = self.op
        if op == "const":
            q = self.value
            return iv.mpf(q.numerator) / iv.mpf(q.denominator)
        if op == "pi":
            return iv.pi
        if op == "e":
            return iv.e
        if op == "alg":
            r = self.value.real_enclosure(prec + 8)
            return iv.make_mpf((libmp.from_man_exp(r.lo, -r.p), libmp.from_man_exp(r.hi, -r.p)))
        xs = [a.enclose(prec) for a in self.args]
        if op == "add":
            out = xs[0]
            for x in xs[1:]:
                out = out + x
            return out
        if op == "mul":
            out = xs[0]
            for x in xs[1:]:
                out = out * x
            return out
        if op == "div":
            return xs[0] / xs[1]
        if op == "ln":
            return iv.log(xs[0])
        if op == "log2":
            return iv.log(xs[0]) / iv.log(2)
        if op == "ceil":
            lo, hi = xs[0]._mpi_
            return iv.make_mpf((libmp.mpf_ceil(lo), libmp.mpf_ceil(hi)))
        if op in ("max", "min"):
            los = [x._mpi_[0] for x in xs]
            his = [x._mpi_[1] for x in xs]
            pick = max if op == "max" else min
            key = lambda r: mpmath.mpf(r)  # noqa: E731
            return iv.make_mpf((pick(los, key=key), pick(his, key=key)))
        if op == "pow":
            return self._eval_pow(xs[0], xs[1])
        raise ValueError(f"unknown node {op!r}")

    def _eval_pow(self, b, e):
        ex = self.args[1].exact()
        if ex is not None and ex.is_rational and ex.coef.denominator == 1:
            return b ** int(ex.coef)
        if b._mpi_[0] == libmp.fzero:
            # base touches zero: x^e is monotone in x for e > 0
            hi = iv.exp(e * iv.log(iv.make_mpf((b._mpi_[1], b._mpi_[1]))))
            return iv.make_mpf((libmp.fzero, hi._mpi_[1]))
        return iv.exp(e * iv.log(b))

    def bounds(self, prec: int = 64) -> tuple:
        """(lo, hi) as mpf endpoints."""
        x = self.enclose(prec)
        return mpmath.mpf(x._mpi_[0]), mpmath.mpf(x._mpi_[1])

    def approx(self) -> float:
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def decimal_enclosure(self, digits: int = 20) -> tuple[str, str]:
        """Decimal strings lo <= value <= hi, each with ``digits`` significant digits."""
        ex = self.exact()
        if ex is not None and ex.is_rational and max(ex.coef.numerator.bit_length(),
                                                       ex.coef.denominator.bit_length()) < 1 << 16:
            return _dec_exact(ex.coef, digits, down=True), _dec_exact(ex.coef, digits, down=False)
        prec = max(64, 4 * digits + 32)
        x = self.enclose(prec)
        lo, hi = x._mpi_
        return _dec(lo, digits, prec, down=True), _dec(hi, digits, prec, down=False)

    # -- exact evaluation ---------------------------------------------------

    def exact(self) -> "_LogMono | None":
        """Exact value as c * ln(r)^k when that form is reachable, else None."""
        if "_exact" not in self.__dict__:
            self.__dict__["_exact"] = self._exact()
        return self.__dict__["_exact"]

    def _exact(self):
        op = self.op
        if op == "const":
            return _LogMono(self.value)
        if op in ("pi", "e", "alg"):
            return None
        if op == "ceil":
            x = self.args[0].exact()
            if x is not None and x.is_rational:
                return _LogMono(Fraction(-((-x.coef.numerator) // x.coef.denominator)))
            prec = 64
            while prec <= _roots.PRECISION_CAP:
                lo, hi = self.enclose(prec)._mpi_
                if lo == hi:
                    return _LogMono(Fraction(int(mpmath.mpf(lo))))
                prec *= 4
            return None
        if op in ("max", "min"):
            best = self.args[0]
            for a in self.args[1:]:
                try:
                    c = magnitude_cmp(a, best)
                except Undecided:
                    return None
                if (c > 0) == (op == "max") and c != 0:
                    best = a
            return best.exact()
        xs = [a.exact() for a in self.args]
        if op == "ln":
            x = xs[0]
            if x is None or not x.is_rational:
                return None
            return _LogMono.ln(x.coef)
        if op == "log2":
            x = xs[0]
            if x is None or not x.is_rational:
                return None
            return _LogMono.ln(x.coef).div(_LogMono.ln(Fraction(2)))
        if any(x is None for x in xs):
            return None
        if op == "add":
            out = xs[0]
            for x in xs[1:]:
                out = out and out.add(x)
            return out
        if op == "mul":
            out = xs[0]
            for x in xs[1:]:
                out = out and out.mul(x)
            return out
        if op == "div":
            return xs[0].div(xs[1])
        if op == "pow":
            return xs[0].pow(xs[1])
        return None


class _LogMono:
    """c * prod(p^r_p) * ln(base)^k.

    c is rational, each r_p lies strictly between 0 and 1 (p prime), and
    base is a rational > 1 that is not a perfect power. The form is
    canonical, so equal values with the same shape have equal fields.
    """

    __slots__ = ("coef", "rad", "base", "k")

    def __init__(self, coef: Fraction, base: Fraction | None = None, k: int = 0, rad: tuple = ()):
        if coef == 0:
            rad = ()
        if coef == 0 or k == 0:
            base, k = None, 0
        self.coef = Fraction(coef)
        self.rad = rad
        self.base = base
        self.k = k

    @property
    def is_rational(self) -> bool:
        return self.k == 0 and not self.rad

    @staticmethod
    def ln(r: Fraction) -> "_LogMono | None":
        if r <= 0:
            return None
        if r == 1:
            return _LogMono(Fraction(0))
        sign = 1
        if r < 1:
            r, sign = 1 / r, -1
        root, m = _minimal_root(r)
        return _LogMono(Fraction(sign * m), root, 1)

    def _log_shape(self, other) -> tuple | None:
        """Combined (base) for a product, or None when two logs differ."""
        if self.k and other.k and self.base != other.base:
            return None
        return (self.base or other.base,)

    def add(self, other):
        if self.coef == 0:
            return other
        if other.coef == 0:
            return self
        if (self.k, self.base, self.rad) != (other.k, other.base, other.rad):
            return None
        return _LogMono(self.coef + other.coef, self.base, self.k, self.rad)

    def _merge(self, other, sign):
        coef = self.coef * other.coef if sign > 0 else self.coef / other.coef
        exps = dict(self.rad)
        for p, r in other.rad:
            exps[p] = exps.get(p, Fraction(0)) + sign * r
        return _fold(coef, exps)

    def mul(self, other):
        if self.coef == 0 or other.coef == 0:
            return _LogMono(Fraction(0))
        shape = self._log_shape(other)
        if shape is None:
            return None
        coef, rad = self._merge(other, 1)
        return _LogMono(coef, shape[0], self.k + other.k, rad)

    def div(self, other):
        if other is None or other.coef == 0:
            return None
        if self.coef == 0:
            return _LogMono(Fraction(0))
        shape = self._log_shape(other)
        if shape is None:
            return None
        coef, rad = self._merge(other, -1)
        return _LogMono(coef, shape[0], self.k - other.k, rad)

    def pow(self, e):
        if not e.is_rational:
            return None
        p, q = e.coef.numerator, e.coef.denominator
        c = self.coef
        if c == 0:
            return _LogMono(Fraction(0)) if p > 0 else None
        if self.k and q != 1:
            return None
        size = max(c.numerator.bit_length(), c.denominator.bit_length())
        if abs(p) * size > _EXACT_BITS or (c < 0 and q != 1):
            return None
        if q == 1:
            exps = {pr: r * p for pr, r in self.rad}
            coef, rad = _fold(c ** p, exps)
            return _LogMono(coef, self.base, self.k * p, rad)
        if size > 256:
            return None
        exps: dict = {}
        for pr, m in factorint(c.numerator).items():
            exps[pr] = exps.get(pr, 0) + Fraction(m * p, q)
        for pr, m in factorint(c.denominator).items():
            exps[pr] = exps.get(pr, 0) - Fraction(m * p, q)
        for pr, r in self.rad:
            exps[pr] = exps.get(pr, 0) + r * e.coef
        coef, rad = _fold(Fraction(1), exps)
        return _LogMono(coef, None, 0, rad)

    def __repr__(self) -> str:
        parts = [fmt_rational(self.coef)]
        parts += [f"{p}^({fmt_rational(r)})" for p, r in self.rad]
        if self.k:
            parts.append(f"ln({fmt_rational(self.base)})^{self.k}")
        return "*".join(parts)

    def cmp(self, other) -> int | None:
        a, b = self.coef, other.coef
        if a and b and (self.k, self.base, self.rad) != (other.k, other.base, other.rad):
            return None
        return (a > b) - (a < b)


def _fold(coef: Fraction, exps: dict) -> tuple[Fraction, tuple]:
    """Move whole parts of prime exponents into the rational coefficient."""
    rad = []
    for p in sorted(exps):
        r = Fraction(exps[p])
        whole = r.numerator // r.denominator
        frac = r - whole
        coef *= Fraction(p) ** whole
        if frac:
            rad.append((p, frac))
    return coef, tuple(rad)


def _minimal_root(r: Fraction) -> tuple[Fraction, int]:
    """(s, m) with r = s^m and m maximal, for rational r > 1."""
    def pp(n):
        if n == 1:
            return None
        got = perfect_power(n)
        return (n, 1) if got is False else (int(got[0]), int(got[1]))

    num, den = pp(r.numerator), pp(r.denominator)
    if den is None:
        return Fraction(num[0]), num[1]
    from math import gcd
    m = gcd(num[1], den[1])
    sn = num[0] ** (num[1] // m)
    sd = den[0] ** (den[1] // m)
    return Fraction(sn, sd), m


@contextmanager
def _ivprec(prec: int):
    old = iv.prec
    iv.prec = prec
    try:
        yield
    finally:
        iv.prec = old


def _dec_exact(q: Fraction, digits: int, down: bool) -> str:
    """Scientific decimal for a rational, rounded in the safe direction."""
    if q == 0:
        return "0.0"
    a = abs(q)
    e10 = len(str(a.numerator)) - len(str(a.denominator))
    if Fraction(10) ** e10 > a:
        e10 -= 1
    k = e10 - digits + 1
    v = q / Fraction(10) ** k
    m = math.floor(v) if down else math.ceil(v)
    return _sci(m, k, digits)


def _sci(m: int, k: int, digits: int) -> str:
    if len(str(abs(m))) > digits:
        # rounding carried into a new digit, so m is a power of ten
        m, k = m // 10, k + 1
    sign = "-" if m < 0 else ""
    txt = str(abs(m))
    k += len(txt) - 1
    body = txt[0] + ("." + txt[1:] if len(txt) > 1 else "")
    return f"{sign}{body}e{k}"


def _dec(raw, digits: int, prec: int, down: bool) -> str:
    """Scientific decimal for an mpf endpoint, rounded in the safe direction."""
    x = mpmath.mpf(raw)
    if x == 0 or not mpmath.isfinite(x):
        return mpmath.nstr(x, digits)
    sign_bit, man, exp, bc = raw
    # enough bits to resolve the decimal exponent and then the digits
    wp = prec + 2 * max(abs(exp + bc).bit_length(), 8) + 32
    with mpmath.workprec(wp):
        e10 = int(mpmath.floor(mpmath.log10(abs(x))))
    k = e10 - digits + 1
    if abs(exp) < 1 << 16 and abs(k) < 1 << 14:
        v = Fraction(-man if sign_bit else man) * Fraction(2) ** exp / Fraction(10) ** k
        m = math.floor(v) if down else math.ceil(v)
    else:
        with _ivprec(wp):
            scaled = iv.make_mpf((raw, raw)) / iv.mpf(10) ** k
        lo, hi = scaled._mpi_
        m = libmp.to_int(lo, "f") if down else libmp.to_int(hi, "c")
    return _sci(m, k, digits)


def mag(x) -> Mag:
    if isinstance(x, Mag):
        return x
    return Mag.const(x)


def ln(x) -> Mag:
    return Mag("ln", (mag(x),))


def log2(x) -> Mag:
    return Mag("log2", (mag(x),))


def ceil(x) -> Mag:
    return Mag("ceil", (mag(x),))


def mmax(*xs) -> Mag:
    return Mag("max", tuple(mag(x) for x in xs))


def mmin(*xs) -> Mag:
    return Mag("min", tuple(mag(x) for x in xs))


def exp(x) -> Mag:
    return Mag("pow", (Mag.e(), mag(x)))


def magnitude_cmp(a, b) -> int:
    """-1, 0 or +1. Raises Undecided rather than guess on an unresolved tie."""
    a, b = mag(a), mag(b)
    ea, eb = a.exact(), b.exact()
    if ea is not None and eb is not None:
        c = ea.cmp(eb)
        if c is not None:
            return c
    prec = 64
    while prec <= _roots.PRECISION_CAP:
        xa, xb = a.enclose(prec), b.enclose(prec)
        (alo, ahi), (blo, bhi) = xa._mpi_, xb._mpi_
        if libmp.mpf_lt(ahi, blo):
            return -1
        if libmp.mpf_gt(alo, bhi):
            return 1
        prec *= 4
    if a.same_tree(b):
        return 0
    raise Undecided(f"could not separate {a} and {b} below the precision cap")
