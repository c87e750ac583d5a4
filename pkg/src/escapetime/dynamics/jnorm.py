"""Jordan norm, block norms and the rec / lt_eps / ge_eps / outside partition."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..core.algebraic import AlgebraicNumber
from ..core.rational import to_fraction
from ..linalg.algexpr import AlgExpr
from ..linalg.jordan import RealJordanForm, SpaceSplit
from ..semialg.formula import SemialgebraicSet, member

LABELS = ("rec", "lt_eps", "ge_eps", "outside")


def num(x):
    """Fraction when the value is structurally rational, AlgExpr otherwise."""
    if isinstance(x, AlgExpr):
        return x.as_fraction() if x.is_rational() else x
    if isinstance(x, AlgebraicNumber):
        return x.as_fraction() if x.is_rational() else AlgExpr.of_algebraic(x)
    return to_fraction(x)


def sign(x) -> int:
    if isinstance(x, AlgExpr):
        return x.sign()
    return (x > 0) - (x < 0)


def cmp(a, b) -> int:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return (a > b) - (a < b)
    return sign(AlgExpr.coerce(a) - AlgExpr.coerce(b))


def exact_max(values):
    best = None
    for v in values:
        if best is None or cmp(v, best) > 0:
            best = v
    return Fraction(0) if best is None else best


def _components(blocks) -> list[tuple[int, ...]]:
    """Coordinate groups: singletons for real blocks, pairs for complex blocks.

    ``blocks`` is a RealJordanForm, a list of JordanBlock, or a list of
    ("real" | "complexPair", dim) tuples laid out consecutively.
    """
    if isinstance(blocks, RealJordanForm):
        blocks = blocks.blocks
    out = []
    start = 0
    for b in blocks:
        if isinstance(b, tuple):
            kind, dim = b
            if kind == "real":
                out.extend((i,) for i in range(start, start + dim))
            else:
                out.extend((i, i + 1) for i in range(start, start + dim, 2))
            start += dim
        else:
            out.extend(b.components())
    return out


def block_components(form: RealJordanForm) -> list[list[tuple[int, ...]]]:
    return [b.components() for b in form.blocks]


def component_sq(y: Sequence, comp: tuple[int, ...]):
    return sum((y[i] * y[i] for i in comp), Fraction(0))


def jordan_norm_sq(y: Sequence, blocks, coords: Sequence[int] | None = None):
    """Exact squared Jordan norm of y (J-coordinates), optionally restricted to ``coords``."""
    y = [num(v) for v in y]
    keep = None if coords is None else set(coords)
    vals = []
    for comp in _components(blocks):
        if keep is not None:
            comp = tuple(i for i in comp if i in keep)
            if not comp:
                continue
        vals.append(component_sq(y, comp))
    return exact_max(vals)


def _to_algebraic(v) -> AlgebraicNumber:
    if isinstance(v, Fraction):
        return AlgebraicNumber.from_rational(v)
    return v.to_algebraic()


def jordan_norm(y: Sequence, blocks) -> AlgebraicNumber:
    """max over real coordinates of |y_i| and over complex pairs of sqrt(y_i^2 + y_j^2)."""
    return _to_algebraic(jordan_norm_sq(y, blocks)).sqrt()


def norm_chain_holds(y: Sequence, blocks) -> bool:
    """n^-1/2 |y|_J <= n^-1/2 |y|_2 <= |y|_inf <= |y|_J <= |y|_2 <= n^1/2 |y|_inf, on squares."""
    y = [num(v) for v in y]
    n = len(y)
    j2 = jordan_norm_sq(y, blocks)
    e2 = sum((v * v for v in y), Fraction(0))
    i2 = exact_max(v * v for v in y)
    return (cmp(j2, e2) <= 0 and cmp(e2, n * i2) <= 0 and cmp(i2, j2) <= 0)


def to_jordan_coords(form: RealJordanForm, x: Sequence) -> list:
    x = [num(v) for v in x]
    out = []
    for row in form.Qinv:
        acc = Fraction(0)
        for q, xi in zip(row, x):
            q = num(q)
            if q == 0 or (isinstance(xi, Fraction) and xi == 0):
                continue
            acc = acc + q * xi
        out.append(num(acc) if isinstance(acc, AlgExpr) else acc)
    return out


def classify(x: Sequence, form: RealJordanForm, split: SpaceSplit, K: SemialgebraicSet, eps) -> str:
    """Label x (original coordinates) as outside, rec, ge_eps or lt_eps."""
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not member(K, x):
        return "outside"
    y = to_jordan_coords(form, x)
    proj = [y[i] for i in split.nonrec]
    if all(sign(v) == 0 for v in proj):
        return "rec"
    n2 = jordan_norm_sq(y, form, coords=split.nonrec)
    return "ge_eps" if cmp(n2, eps * eps) >= 0 else "lt_eps"
