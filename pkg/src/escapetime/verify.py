"""Measured-versus-bound harness shared by the CLI and the acceptance tests."""
from __future__ import annotations

import math
import random
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction

from .bounds.constants import BoundConstants
from .bounds.formulas import block_bound_exp, block_bound_poly, block_bound_shrink, compact_escape_bound
from .bounds.magnitude import Mag, magnitude_cmp
from .core.rational import fmt_rational, rat_bitsize
from .dynamics.orbit import escape_time, first_all_below, first_exceeding
from .linalg.jordan import real_jordan
from .semialg.families import additive_start, gen_additive_instance, gen_rotation_instance, rotation_start
from .semialg.formula import Atom, EscapeInstance, SemialgebraicSet
from .semialg.multipoly import MultiPoly
from .semialg.oracles import radius_oracle


def instance_complexity(inst: EscapeInstance) -> tuple[int, int, int]:
    """(n, d, tau) with tau covering both the set's coefficients and the matrix entries."""
    n, d, tau = inst.set.complexity()
    tau = max([tau] + [rat_bitsize(a) for row in inst.matrix for a in row])
    return n, max(d, 1), tau


@dataclass
class Row:
    family: str
    params: tuple
    measured: int | None
    bound: Mag
    verdict: str  # "measured <= bound", "cap exceeded", "VIOLATION"

    def to_json(self) -> dict:
        lo, hi = self.bound.decimal_enclosure(6)
        return {"family": self.family, "params": list(self.params), "measured": self.measured,
                "bound": str(self.bound), "bound_enclosure": [lo, hi], "verdict": self.verdict}


def _verdict(measured, bound: Mag) -> str:
    if measured is None:
        return "cap exceeded"
    return "measured <= bound" if magnitude_cmp(measured, bound) <= 0 else "VIOLATION"


def family_row(family: str, n: int, d: int, tau: int, cap: int, consts: BoundConstants) -> Row:
    if family == "additive":
        inst, x0 = gen_additive_instance(n, d, tau), additive_start(n, d, tau)
    elif family == "rotation":
        inst, x0 = gen_rotation_instance(n, d, tau), rotation_start(n, d, tau)
    else:
        raise ValueError(f"unknown family {family!r}")
    rep = escape_time(inst, x0, cap)
    bound = compact_escape_bound(*instance_complexity(inst), consts)
    return Row(family, (n, d, tau), rep.escape_time, bound, _verdict(rep.escape_time, bound))


# -- single Jordan blocks ----------------------------------------------------


def jordan_block_matrix(lam: Fraction, k: int) -> list[list[Fraction]]:
    return [[lam if i == j else (Fraction(1) if j == i + 1 else Fraction(0)) for j in range(k)] for i in range(k)]


def box_set(k: int, b: Fraction) -> SemialgebraicSet:
    """The cube [-b, b]^k, written with integer coefficients."""
    atoms = []
    for i in range(k):
        x = MultiPoly.var(k, i)
        atoms.append(Atom(x * x * (b.denominator ** 2) - MultiPoly.const(k, b.numerator ** 2), "le"))
    return SemialgebraicSet.conj(k, atoms)


@lru_cache(maxsize=None)
def box_radius(k: int, b: Fraction) -> Fraction:
    """Empirical radius bound of the cube; cached since suites revisit the same cubes."""
    return radius_oracle(box_set(k, b), "empirical").exact().coef


@dataclass
class BlockCase:
    regime: str  # "poly" (gamma = 1), "exp" (gamma > 1), "shrink" (gamma < 1)
    lam: Fraction
    k: int
    x0: list
    eps: Fraction
    half_width: Fraction

    def to_json(self) -> dict:
        return {"regime": self.regime, "lambda": fmt_rational(self.lam), "k": self.k,
                "x0": [fmt_rational(v) for v in self.x0], "eps": fmt_rational(self.eps),
                "half_width": fmt_rational(self.half_width)}


def random_block_case(rng: random.Random, regime: str) -> BlockCase:
    eps = rng.choice([Fraction(1, 4), Fraction(1)])
    sign = rng.choice([1, -1])
    if regime == "poly":
        k = rng.randint(2, 4)
        lam = Fraction(sign)
    elif regime == "exp":
        # the lemma needs a component j >= 2, so a 1x1 block is out of scope
        k = rng.randint(2, 4)
        lam = sign * Fraction(rng.randint(5, 15), 5)
        while abs(lam) <= 1:
            lam = sign * Fraction(rng.randint(5, 15), 5)
    elif regime == "shrink":
        k = rng.randint(1, 4)
        # the helper inequality t >= a ln t + b needs a = k/ln(1/gamma) >= 1
        while True:
            den = rng.randint(2, 9)
            lam = sign * Fraction(rng.randint(1, den - 1), den)
            if math.log(1 / abs(lam)) <= k:
                break
    else:
        raise ValueError(f"unknown regime {regime!r}")
    b = Fraction(rng.randint(2, 6))
    x0 = [Fraction(rng.randint(-4 * int(b), 4 * int(b)), 4) for _ in range(k)]
    if regime in ("poly", "exp"):
        # the lemmas need some component j >= 2 (1-based) above eps
        j = rng.randint(1, k - 1)
        mag_ = eps + Fraction(rng.randint(1, 4 * int(b - eps) if b - eps >= 1 else 1), 4)
        x0[j] = min(mag_, b) * rng.choice([1, -1])
    return BlockCase(regime, lam, k, x0, eps, b)


@dataclass
class BlockOutcome:
    case: BlockCase
    C: Fraction
    measured: int | None
    bound: Mag
    ok: bool

    def to_json(self) -> dict:
        return {"case": self.case.to_json(), "C": fmt_rational(self.C), "measured": self.measured,
                "bound": str(self.bound), "bound_enclosure": list(self.bound.decimal_enclosure(6)),
                "ok": self.ok}


def check_block_case(case: BlockCase, cap: int = 200_000) -> BlockOutcome:
    """Simulate the block and compare the lemma's event time with its bound."""
    C = box_radius(case.k, case.half_width)
    A = jordan_block_matrix(case.lam, case.k)
    form = real_jordan(A)
    # a single real block with identity Q: x is already in J-coordinates
    y0 = case.x0
    k = case.k
    if case.regime == "poly":
        bound = block_bound_poly(k, Mag.const(C), case.eps)
        measured = first_exceeding(form, y0, C, cap)
    elif case.regime == "exp":
        bound = block_bound_exp(k, Mag.const(C), case.eps, abs(case.lam))
        measured = first_exceeding(form, y0, C, cap)
    else:
        Cn = max(C, Fraction(k))  # the lemma asks for C >= n
        bound = block_bound_shrink(k, Mag.const(Cn), case.eps, abs(case.lam))
        measured = first_all_below(form, y0, case.eps, cap)
        C = Cn
    ok = measured is not None and magnitude_cmp(measured, bound) <= 0
    return BlockOutcome(case, C, measured, bound, ok)
