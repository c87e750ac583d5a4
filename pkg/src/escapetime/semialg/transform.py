"""Rewrite an instance (A, K) into real Jordan coordinates.

With A = Q J Q^-1, an orbit A^t x stays in K exactly when J^t Q^-1 x stays in
Q^-1 K.  The entries of Q are algebraic, so the new set lives over n + m
variables: the last m are pinned to real algebraic constants gamma_j by
f_j(z_j) = 0, a_j <= z_j <= b_j, and every atom P(x) of K becomes
P(sum_k Q_ik(z) x_k) with denominators cleared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from ..core.algebraic import AlgebraicNumber
from ..core.rational import bitsize, rat_bitsize
from ..linalg.algexpr import AlgExpr, Sym, imag_unit
from ..linalg.jordan import RealJordanForm, real_jordan
from ..linalg.matrix import as_matrix
from .formula import And, Atom, Node, Not, Or, SemialgebraicSet, eval_node, member
from .multipoly import MultiPoly


@dataclass
class AtomReport:
    kind: str  # "pin" or "substituted"
    degree: int
    bitsize: int
    degree_ok: bool
    bitsize_ok: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class TransformReport:
    n: int
    d: int
    tau: int
    m: int
    delta: int
    sigma: int
    degree_cap: int
    bitsize_cap: float
    atoms: list[AtomReport] = field(default_factory=list)

    @property
    def violations(self) -> list[AtomReport]:
        return [a for a in self.atoms if not (a.degree_ok and a.bitsize_ok)]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "tau": self.tau,
            "m": self.m,
            "delta": self.delta,
            "sigma": self.sigma,
            "degree_cap": self.degree_cap,
            "bitsize_cap": self.bitsize_cap,
            "ok": self.ok,
            "atoms": [a.to_json() for a in self.atoms],
        }


@dataclass
class Transformed:
    """Everything needed to run orbits on the transformed side."""

    form: RealJordanForm
    set: SemialgebraicSet
    gammas: list[AlgebraicNumber]
    gamma_exprs: list[AlgExpr]
    entry_map: list[list]  # per (i, k): ("const", q) or ("z", j)
    report: TransformReport
    _pins_hold: bool | None = None

    def lift(self, x) -> list:
        """Q^-1 x followed by the pinned constants."""
        y = [sum((r * Fraction(v) for r, v in zip(row, x) if v), AlgExpr.const(0)) for row in self.form.Qinv]
        return y + list(self.gamma_exprs)

    def member(self, point: list) -> bool:
        """Membership in the transformed set.

        The pinning conjuncts only involve the constant coordinates, which
        the dynamics never change, so they are decided once and cached.
        """
        if self._pins_hold is None:
            pins = self.set.formula.args[:-1]
            self._pins_hold = all(eval_node(a, point) for a in pins)
        return self._pins_hold and eval_node(self.set.formula.args[-1], point)

    def step(self, point: list) -> list:
        n = self.form.n
        J = self.form.J
        y = point[:n]
        out = []
        for i in range(n):
            acc = AlgExpr.const(0)
            for k in range(n):
                if not J[i][k].is_structurally_zero():
                    acc = acc + J[i][k] * y[k]
            out.append(acc)
        return out + point[n:]


def _eigen_parts(form: RealJordanForm) -> list[AlgExpr]:
    out = []
    seen = set()
    for b in form.blocks:
        key = (b.eigenvalue.minpoly.coeffs, b.eigenvalue.index)
        if key in seen:
            continue
        seen.add(key)
        if b.kind == "real":
            out.append(AlgExpr.of_algebraic(b.eigenvalue))
        else:
            s = Sym.of(b.eigenvalue)
            lam, lamc = AlgExpr.sym(s), AlgExpr.sym(s.conj())
            I = AlgExpr.sym(imag_unit())
            out.append((lam + lamc) * Fraction(1, 2))
            out.append(-(I * (lam - lamc)) * Fraction(1, 2))
    return out


def _pin_atoms(j: int, N: int, g: AlgebraicNumber) -> list[Atom]:
    box = g.simple_box()
    a, b = box.re_lo, box.re_hi
    zi = MultiPoly.var(N, j)
    f = MultiPoly.from_univariate(N, j, g.minpoly.coeffs)
    return [
        Atom(f, "eq"),
        Atom(MultiPoly.const(N, a.numerator) - zi * a.denominator, "le"),
        Atom(zi * b.denominator - b.numerator, "le"),
    ]


def _map_formula(node: Node, fn) -> Node:
    if isinstance(node, Atom):
        return fn(node)
    if isinstance(node, Not):
        return Not(_map_formula(node.arg, fn))
    kids = tuple(_map_formula(a, fn) for a in node.args)
    return And(kids) if isinstance(node, And) else Or(kids)


def transform_instance(A, K: SemialgebraicSet, form: RealJordanForm | None = None):
    """Returns (form, Kprime, report); see Transformed for the orbit helpers."""
    t = transform_full(A, K, form)
    return t.form, t.set, t.report


def transform_full(A, K: SemialgebraicSet, form: RealJordanForm | None = None) -> Transformed:
    A = as_matrix(A)
    n = len(A)
    if K.nvars != n:
        raise ValueError("set dimension must match the matrix")
    form = form or real_jordan(A)
    _, d, tau = K.complexity()

    gammas: list[AlgebraicNumber] = []
    gexprs: list[AlgExpr] = []

    def gamma_index(e: AlgExpr, g: AlgebraicNumber | None = None) -> int:
        g = g or e.to_algebraic()
        for j, h in enumerate(gammas):
            if h == g:
                return j
        gammas.append(g)
        gexprs.append(e)
        return len(gammas) - 1

    for e in _eigen_parts(form):
        gamma_index(e)
    entry_map: list[list] = []
    for i in range(n):
        row = []
        for k in range(n):
            e = form.Q[i][k]
            if e.is_rational():
                row.append(("const", e.as_fraction()))
                continue
            g = e.to_algebraic()
            if g.is_rational():
                row.append(("const", g.as_fraction()))
            else:
                row.append(("z", gamma_index(e, g)))
        entry_map.append(row)
    m = len(gammas)
    N = n + m
    delta = max([g.degree for g in gammas] + [1])

    den = 1
    for row in entry_map:
        for kind, v in row:
            if kind == "const":
                den = lcm(den, v.denominator)
    q_coeffs = [den]
    images = []
    for i in range(n):
        img = MultiPoly(N, {})
        for k in range(n):
            kind, v = entry_map[i][k]
            if kind == "const":
                if v:
                    c = int(v * den)
                    q_coeffs.append(c)
                    img = img + MultiPoly.var(N, k) * c
            else:
                img = img + MultiPoly.var(N, k) * MultiPoly.var(N, n + v) * den
        images.append(img)

    sigma = max(
        [bitsize(c) for c in q_coeffs]
        + [g.minpoly.bitsize for g in gammas]
        + [max(rat_bitsize(g.simple_box().re_lo), rat_bitsize(g.simple_box().re_hi)) for g in gammas]
        + [1]
    )
    deg_cap = delta * d
    bit_cap = tau + d * (math.log2(2 * n) + math.log2(delta + 1) + sigma)
    report = TransformReport(n, d, tau, m, delta, sigma, deg_cap, bit_cap)

    def subst(atom: Atom) -> Atom:
        out = MultiPoly(N, {})
        dd = atom.poly.total_degree()
        cache: dict = {}
        for e, c in atom.poly.terms.items():
            term = MultiPoly.const(N, c * den ** (d - sum(e)))
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    term = term * cache[(i, k)]
            out = out + term
        del dd
        new = Atom(out, atom.rel)
        deg, bs = out.total_degree(), out.coeff_bitsize()
        report.atoms.append(AtomReport("substituted", deg, bs, deg <= deg_cap, bs <= bit_cap))
        return new

    body = _map_formula(K.formula, subst)
    pins = []
    for j, g in enumerate(gammas):
        for a in _pin_atoms(n + j, N, g):
            deg, bs = a.poly.total_degree(), a.poly.coeff_bitsize()
            report.atoms.append(AtomReport("pin", deg, bs, deg <= deg_cap or deg <= delta, bs <= bit_cap))
            pins.append(a)
    K2 = SemialgebraicSet(N, And(tuple(pins) + (body,)))
    return Transformed(form, K2, gammas, gexprs, entry_map, report)


def membership_equivalence(A, K: SemialgebraicSet, tr: Transformed, x, T: int) -> list[tuple[int, bool, bool]]:
    """(t, x_t in K, lifted point in K') for t = 0..T; callers assert equality."""
    A = as_matrix(A)
    out = []
    xt = [Fraction(v) for v in x]
    pt = tr.lift(xt)
    for t in range(T + 1):
        out.append((t, member(K, xt), tr.member(pt)))
        xt = [sum((a * v for a, v in zip(row, xt)), Fraction(0)) for row in A]
        pt = tr.step(pt)
    return out
