"""Branch-and-prune oracles: a radius bound and a lower bound for a polynomial on K.

Boxes live in the extended reals. A box side is a pair (lo, hi) of
Fractions or float infinities; unbounded sides are cut at +-1 first and
then pushed outward by doubling, so every box the search ever sees is
a finite union of dyadic pieces. Formulas are evaluated in three-valued
logic: an atom is True or False on a box only when interval evaluation
proves it for every point of the box.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..bounds.magnitude import Mag
from ..core.rational import sqrt_upper, to_fraction
from ..errors import EmpiricalTimeout, Undecided
from .formula import And, Atom, Node, Not, Or, SemialgebraicSet, member
from .multipoly import MultiPoly

INF = float("inf")
UNKNOWN = None

Box = tuple  # tuple of (lo, hi)


def _mul(a, b):
    if a == 0 or b == 0:
        return 0
    return a * b


def _pow_range(lo, hi, k: int):
    if k % 2 or lo >= 0:
        return lo ** k, hi ** k
    if hi <= 0:
        return hi ** k, lo ** k
    return 0, max(lo ** k, hi ** k)


def poly_range(poly: MultiPoly, box: Box) -> tuple:
    """Interval enclosure of poly over box, exact in rational arithmetic."""
    lo_sum, hi_sum = 0, 0
    powers: dict = {}
    for e, c in poly.terms.items():
        lo, hi = c, c
        for i, k in enumerate(e):
            if not k:
                continue
            r = powers.get((i, k))
            if r is None:
                r = powers[(i, k)] = _pow_range(box[i][0], box[i][1], k)
            cands = (_mul(lo, r[0]), _mul(lo, r[1]), _mul(hi, r[0]), _mul(hi, r[1]))
            lo, hi = min(cands), max(cands)
        lo_sum += lo
        hi_sum += hi
    return lo_sum, hi_sum


def eval3(node: Node, box: Box):
    """True, False, or UNKNOWN for the formula over the whole box."""
    if isinstance(node, Atom):
        lo, hi = poly_range(node.poly, box)
        if node.rel == "le":
            return True if hi <= 0 else (False if lo > 0 else UNKNOWN)
        if node.rel == "eq":
            return True if lo == hi == 0 else (False if lo > 0 or hi < 0 else UNKNOWN)
        raise ValueError("normalize the formula before interval evaluation")
    if isinstance(node, Not):
        v = eval3(node.arg, box)
        return UNKNOWN if v is UNKNOWN else not v
    vals = [eval3(a, box) for a in node.args]
    if isinstance(node, And):
        if any(v is False for v in vals):
            return False
        return True if all(v is True for v in vals) else UNKNOWN
    if any(v is True for v in vals):
        return True
    return False if all(v is False for v in vals) else UNKNOWN


def _split_side(lo, hi) -> list:
    if lo == -INF and hi == INF:
        return [(-INF, Fraction(-1)), (Fraction(-1), Fraction(1)), (Fraction(1), INF)]
    if hi == INF:
        cut = 2 * max(lo, Fraction(1))
        return [(lo, cut), (cut, INF)]
    if lo == -INF:
        cut = 2 * min(hi, Fraction(-1))
        return [(-INF, cut), (cut, hi)]
    mid = (lo + hi) / 2
    return [(lo, mid), (mid, hi)]


def split_box(box: Box) -> list[Box]:
    """Cut an unbounded side if there is one, else bisect the widest side."""
    unbounded = [i for i, (lo, hi) in enumerate(box) if lo == -INF or hi == INF]
    if unbounded:
        i = unbounded[0]
    else:
        i = max(range(len(box)), key=lambda j: box[j][1] - box[j][0])
    return [box[:i] + (side,) + box[i + 1:] for side in _split_side(*box[i])]


def box_width(box: Box):
    return max(hi - lo for lo, hi in box)


def norm2_upper(box: Box):
    return sum(max(lo * lo, hi * hi) for lo, hi in box)


def whole_space(n: int) -> Box:
    return ((-INF, INF),) * n


@dataclass
class RadiusCertificate:
    """C with every point of K inside the surviving boxes, all of norm <= C."""
    C: Fraction
    C_squared: Fraction
    boxes: list
    explored: int

    def sample(self, rng, k: int = 1) -> list:
        """Random rational points drawn from the surviving boxes."""
        out = []
        for _ in range(k):
            b = self.boxes[rng.randrange(len(self.boxes))]
            out.append([lo + (hi - lo) * Fraction(rng.randrange(1025), 1024) for lo, hi in b])
        return out


def radius_search(K: SemialgebraicSet, tol=Fraction(1, 1 << 12), budget: int = 400_000) -> RadiusCertificate:
    """Best-first pruning on the largest possible norm until the worst box is small."""
    tol = to_fraction(tol)
    start = whole_space(K.nvars)
    # ties on the key go to the smaller box, which dives straight to the extreme point
    heap = [(-INF, INF, 0, start)]
    count = 1
    explored = 0
    while heap:
        neg, _, _, box = heapq.heappop(heap)
        explored += 1
        if explored > budget:
            raise EmpiricalTimeout(f"radius search used its budget of {budget} boxes")
        status = eval3(K.formula, box)
        if status is False:
            continue
        if -neg != INF and box_width(box) <= tol:
            c2 = Fraction(-neg)
            rest = [b for *_, b in heap] + [box]
            return RadiusCertificate(sqrt_upper(c2, 32), c2, rest, explored)
        for child in split_box(box):
            up = norm2_upper(child)
            heapq.heappush(heap, (-up, box_width(child), count, child))
            count += 1
    # every box refuted: K is empty, and any C works
    return RadiusCertificate(Fraction(0), Fraction(0), [], explored)


def radius_oracle(K: SemialgebraicSet, mode: str = "empirical", c: int = 1, params: Sequence[int] | None = None,
                  tol=Fraction(1, 1 << 12), budget: int = 400_000) -> Mag:
    """Upper bound on the Euclidean norm over K.

    ``empirical`` certifies a bound by branch and prune. ``parametric``
    returns 2^(tau d^(c(n+1))) where (n, d, tau) defaults to K's complexity.
    """
    if mode == "empirical":
        return Mag.const(radius_search(K, tol, budget).C)
    if mode == "parametric":
        n, d, tau = params if params is not None else K.complexity()
        if c < 1:
            raise ValueError("c must be a positive integer")
        C = Mag.const
        return C(2) ** (C(tau) * C(d) ** C(c * (n + 1)))
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class MinCertificate:
    lower: Fraction
    witness: list
    witness_value: Fraction
    witness_in_K: bool
    explored: int
    boxes: list = field(default_factory=list)


def min_oracle(K: SemialgebraicSet, P: MultiPoly, budget: int = 400_000,
               tol=Fraction(1, 1 << 12)) -> MinCertificate:
    """Certified lower bound on min of P over K, with the midpoint of the last box as a witness."""
    if P.nvars != K.nvars:
        raise ValueError("P and K use different variable counts")
    tol = to_fraction(tol)
    heap = [(-INF, INF, 0, whole_space(K.nvars))]
    count = 1
    explored = 0
    while heap:
        low, _, _, box = heapq.heappop(heap)
        explored += 1
        if explored > budget:
            raise Undecided(f"min search used its budget of {budget} boxes")
        if eval3(K.formula, box) is False:
            continue
        if low != -INF and box_width(box) <= tol:
            mid = [(lo + hi) / 2 for lo, hi in box]
            val = Fraction(P(mid))
            rest = [box] + [b for *_, b in heap]
            return MinCertificate(Fraction(low), mid, val, member(K, mid), explored, rest)
        for child in split_box(box):
            lo, _ = poly_range(P, child)
            heapq.heappush(heap, (lo, box_width(child), count, child))
            count += 1
    raise Undecided("K is empty; the minimum is undefined")
