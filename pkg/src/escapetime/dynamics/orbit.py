"""Exact orbits, escape times and threshold crossings."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..core.rational import rat_bitsize, to_fraction
from ..errors import BudgetExceeded, StartOutside
from ..linalg.algexpr import AlgExpr
from ..linalg.jordan import RealJordanForm, SpaceSplit, rec_split
from ..semialg.formula import EscapeInstance, member
from .jnorm import classify, cmp, component_sq, exact_max, num, to_jordan_coords


def _sparse(M) -> list[list[tuple[int, object]]]:
    rows = []
    for row in M:
        entries = []
        for j, a in enumerate(row):
            a = num(a)
            if isinstance(a, Fraction) and a == 0:
                continue
            entries.append((j, a))
        rows.append(entries)
    return rows


def _step(rows, x) -> list:
    out = []
    for entries in rows:
        acc = Fraction(0)
        for j, a in entries:
            acc = acc + a * x[j]
        if isinstance(acc, AlgExpr) and acc.is_rational():
            acc = acc.as_fraction()
        out.append(acc)
    return out


def iterate(A, x0: Sequence, t: int) -> list:
    """A^t x0 by repeated exact application."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if len(A) != len(x0):
        raise ValueError("dimension mismatch")
    rows = _sparse(A)
    x = [num(v) for v in x0]
    for _ in range(t):
        x = _step(rows, x)
    return x


def _bits(x) -> int:
    return max((rat_bitsize(v) for v in x if isinstance(v, Fraction)), default=0)


@dataclass
class EscapeReport:
    escape_time: int | None
    cap: int
    trace: list = field(default_factory=list)
    partition_trace: list = field(default_factory=list)
    crossings: list = field(default_factory=list)
    max_bitsize: int = 0

    @property
    def escaped(self) -> bool:
        return self.escape_time is not None

    def to_json(self, sample: int = 64) -> dict:
        return {
            "escape_time": self.escape_time,
            "cap": self.cap,
            "crossings": [c.to_json() for c in self.crossings],
            "partition_trace_sample": self.partition_trace[:sample],
            "max_bitsize": self.max_bitsize,
        }


def escape_time(inst: EscapeInstance, x0: Sequence, cap: int, *, form: RealJordanForm | None = None,
                eps=None, trace_every: int = 0,
                progress: Callable[[int], bool] | None = None) -> EscapeReport:
    """Smallest t <= cap with A^t x0 outside K, or a report with escape_time None.

    With ``form`` and ``eps`` the report also carries the partition label of
    every visited point and per-block upward eps-crossings of the prefix.
    ``progress`` is called every 1024 steps; returning True cancels the run.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    K = inst.set
    x = [num(v) for v in x0]
    if not member(K, x):
        raise StartOutside("the start point is not in K")
    rows = _sparse(inst.matrix)
    labelled = form is not None and eps is not None
    split = rec_split(form) if labelled else None
    report = EscapeReport(None, cap)
    orbit_j = []
    if labelled:
        report.partition_trace.append(classify(x, form, split, K, eps))
        orbit_j.append(to_jordan_coords(form, x))
    if trace_every:
        report.trace.append((0, list(x)))
    for t in range(1, cap + 1):
        x = _step(rows, x)
        report.max_bitsize = max(report.max_bitsize, _bits(x))
        inside = member(K, x)
        if trace_every and t % trace_every == 0:
            report.trace.append((t, list(x)))
        if labelled:
            report.partition_trace.append(classify(x, form, split, K, eps) if inside else "outside")
            orbit_j.append(to_jordan_coords(form, x))
        if not inside:
            report.escape_time = t
            break
        if progress is not None and t % 1024 == 0 and progress(t):
            break
    if labelled:
        report.crossings = _count_from_orbit(form, orbit_j, to_fraction(eps))
    return report


# -- block norms and crossings ---------------------------------------------


@dataclass
class BlockNormTrace:
    block: int
    values: list  # exact squared block norm at each step


@dataclass
class BlockCrossings:
    block: int
    m: int
    count: int
    budget: int  # m^2 - m, the printed per-block budget
    corrected_budget: int  # m(m+1)/2

    @property
    def exceeded(self) -> bool:
        return self.count > self.budget

    @property
    def exceeded_corrected(self) -> bool:
        return self.count > self.corrected_budget

    def to_json(self) -> dict:
        return {"block": self.block, "m": self.m, "count": self.count, "budget": self.budget,
                "corrected_budget": self.corrected_budget, "exceeded": self.exceeded}


def jordan_orbit(form: RealJordanForm, x0: Sequence, horizon: int, jordan_coords: bool = False) -> list:
    """y_0, ..., y_horizon with y_{t+1} = J y_t, in J-coordinates."""
    y = [num(v) for v in x0] if jordan_coords else to_jordan_coords(form, x0)
    rows = _sparse(form.J)
    out = [y]
    for _ in range(horizon):
        y = _step(rows, y)
        out.append(y)
    return out


def block_norm_traces(form: RealJordanForm, orbit: list) -> list[BlockNormTrace]:
    traces = []
    for bi, b in enumerate(form.blocks):
        comps = b.components()
        traces.append(BlockNormTrace(bi, [exact_max(component_sq(y, c) for c in comps) for y in orbit]))
    return traces


def _upward(values: list, eps2) -> int:
    below = [cmp(v, eps2) < 0 for v in values]
    return sum(1 for t in range(1, len(values)) if below[t - 1] and not below[t])


def _count_from_orbit(form: RealJordanForm, orbit: list, eps: Fraction) -> list[BlockCrossings]:
    eps2 = eps * eps
    out = []
    for tr, b in zip(block_norm_traces(form, orbit), form.blocks):
        m = b.size
        out.append(BlockCrossings(tr.block, m, _upward(tr.values, eps2), m * m - m, m * (m + 1) // 2))
    return out


def crossing_count(form: RealJordanForm, x0: Sequence, eps, horizon: int, *,
                   jordan_coords: bool = False, strict: bool = False) -> list[BlockCrossings]:
    """Per-block count of steps t <= horizon where the block norm goes from < eps to >= eps.

    Each count is reported next to the printed budget m^2 - m. With
    ``strict`` a count above that budget raises BudgetExceeded.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    eps = to_fraction(eps)
    res = _count_from_orbit(form, jordan_orbit(form, x0, horizon, jordan_coords), eps)
    if strict:
        bad = [r for r in res if r.exceeded]
        if bad:
            r = bad[0]
            raise BudgetExceeded(f"block {r.block} (m={r.m}) crossed {r.count} times, budget {r.budget}")
    return res


# -- single-block events -----------------------------------------------------


def first_exceeding(form: RealJordanForm, y0: Sequence, C, cap: int) -> int | None:
    """Smallest t <= cap with Jordan norm of J^t y0 above C (y0 in J-coordinates)."""
    C2 = to_fraction(C) ** 2
    comps = [c for b in form.blocks for c in b.components()]
    rows = _sparse(form.J)
    y = [num(v) for v in y0]
    for t in range(cap + 1):
        if cmp(exact_max(component_sq(y, c) for c in comps), C2) > 0:
            return t
        y = _step(rows, y)
    return None


def first_all_below(form: RealJordanForm, y0: Sequence, eps, cap: int) -> int | None:
    """Smallest t <= cap with every component of J^t y0 below eps in Jordan norm."""
    e2 = to_fraction(eps) ** 2
    comps = [c for b in form.blocks for c in b.components()]
    rows = _sparse(form.J)
    y = [num(v) for v in y0]
    for t in range(cap + 1):
        if all(cmp(component_sq(y, c), e2) < 0 for c in comps):
            return t
        y = _step(rows, y)
    return None


__all__ = [
    "iterate", "escape_time", "EscapeReport", "BlockNormTrace", "BlockCrossings", "jordan_orbit",
    "block_norm_traces", "crossing_count", "first_exceeding", "first_all_below", "SpaceSplit",
]
