"""Explicit escape-time and approximation bounds as symbolic magnitudes.

Every function builds a ``Mag`` tree that mirrors the printed formula
factor by factor; nothing is materialized as an integer unless the caller
asks for it. Logarithms are natural unless the name says otherwise.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..core.algebraic import AlgebraicNumber
from ..core.rational import to_fraction
from ..errors import GammaNotExpanding, GammaNotShrinking
from .constants import BoundConstants
from .magnitude import Mag, ceil, exp, ln, mag, magnitude_cmp, mmax

__all__ = [
    "mignotte_gap", "baker_lower", "turan_params", "quant_kronecker_bound",
    "block_bound_poly", "block_bound_exp", "block_bound_shrink",
    "nonrec_bound", "rec_bound", "compact_escape_bound", "switching_budget",
    "block_crossing_budget", "lemma_a1_holds",
]

C = Mag.const


def _prod(factors) -> Mag:
    factors = list(factors)
    if len(factors) == 1:
        return factors[0]
    return Mag("mul", tuple(factors))


def _as_gamma(gamma) -> AlgebraicNumber:
    if isinstance(gamma, AlgebraicNumber):
        return gamma
    return AlgebraicNumber.from_rational(to_fraction(gamma))


def mignotte_gap(d: int, H: int) -> Mag:
    """Lower bound on ||lambda| - 1| for lambda of degree d, height H, off the unit circle."""
    if d < 1 or H < 1:
        raise ValueError("need d >= 1 and H >= 1")
    den = _prod([
        C(3) ** C(Fraction(1, 2)),
        C(2 * d + 2) ** C(2 * d + 3),
        C(2) ** C(2 * d),
        C(factorial(d)) ** C(2 * d),
        C(d + 1) ** C(2 * d * (d - 1)),
        C(H) ** C(2 * d * d),
    ])
    return C(1) / den


def baker_lower(N: int, d: int, logA, B) -> Mag:
    """exp(-(16Nd)^(2(N+2)) * prod(log A_i) * log B): a floor for a nonzero linear form in logs."""
    if N < 1 or d < 1 or len(logA) != N:
        raise ValueError("need N >= 1, d >= 1 and N values of log A")
    if to_fraction(B) < 2:
        raise ValueError("need B >= 2")
    logs = [mag(a) for a in logA]
    for a in logs:
        if magnitude_cmp(a, 1) < 0:
            raise ValueError("each log A_i must be at least 1")
    expo = _prod([C(16 * N * d) ** C(2 * (N + 2))] + logs + [ln(B)])
    return C(1) / exp(expo)


def turan_params(N: int, eps) -> dict:
    """M_j = ceil((1/eps_j) log(N/eps_j)) and the window length T(delta) = 4/delta."""
    eps = [to_fraction(e) for e in eps]
    if len(eps) != N:
        raise ValueError("need one eps per coordinate")
    for e in eps:
        if not 0 < e < Fraction(1, 2):
            raise ValueError("each eps_j must lie in (0, 1/2)")
    Ms = []
    for e in eps:
        m = ceil(C(1 / e) * ln(C(N / e))).exact()
        Ms.append(int(m.coef))

    def T_of_delta(delta) -> Mag:
        return C(4) / mag(delta)

    return {"M": Ms, "T_of_delta": T_of_delta}


def quant_kronecker_bound(s: int, d: int, logA, ell, L, eps) -> Mag:
    """Waiting time before an orbit on an s-dimensional torus comes eps-close to a target.

    For s = 0 the empty product is 1 and s is replaced by 1 in the two
    places where it would zero out the base or the logarithm. The logarithm
    argument is floored at e so the term never goes negative; both changes
    can only raise the bound.
    """
    if s < 0 or len(logA) != s:
        raise ValueError("need s >= 0 and s values of log A")
    eps = to_fraction(eps)
    if eps <= 0 or to_fraction(ell) < 1 or to_fraction(L) < 1:
        raise ValueError("need eps > 0, ell >= 1, L >= 1")
    s1 = max(s, 1)
    pi = Mag.pi()
    r = C(2) * pi * C(L) / C(eps)
    inner_log = ln(mmax(C(4) * pi * C(s1) * C(L) / C(eps), Mag.e()))
    base = _prod([C(2 * s1), r, ceil(C(4) * pi * C(L) / C(eps) * inner_log)])
    expo = _prod([C(16 * (s + 1) * d) ** C(2 * (s + 3))] + [mag(a) for a in logA])
    head = _prod([C(8), pi, C(ell), r ** C(s), base ** expo])
    return head + C(ell)


def block_bound_poly(k: int, Cb, eps) -> Mag:
    """(1/k) (k^2 C / eps)^(2^(k-1)) for a defective block with |gamma| = 1."""
    if k < 1:
        raise ValueError("need k >= 1")
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValueError("need eps > 0")
    return C(Fraction(1, k)) * (C(k * k) * mag(Cb) / C(eps)) ** C(2 ** (k - 1))


def block_bound_exp(k: int, Cb, eps, gamma) -> Mag:
    """2^(k-1) log(k C / eps) / log gamma for an expanding block."""
    g = _as_gamma(gamma)
    if not g.is_real() or g <= 1:
        raise GammaNotExpanding("need a real gamma > 1")
    eps = to_fraction(eps)
    return C(2 ** (k - 1)) * ln(C(k) * mag(Cb) / C(eps)) / ln(Mag.alg(g))


def block_bound_shrink(k: int, Cb, eps, gamma) -> Mag:
    """4k/log(1/g) * log(2k/log(1/g)) + 2 log(kC/eps)/log(1/g) for a shrinking block.

    The middle logarithm's argument is floored at 1, which only raises the
    value; it matters only for gamma below exp(-2k).
    """
    g = _as_gamma(gamma)
    if not g.is_real() or g <= 0 or g >= 1:
        raise GammaNotShrinking("need a real gamma in (0, 1)")
    eps = to_fraction(eps)
    lg = ln(C(1) / Mag.alg(g))
    a = C(4 * k) / lg * ln(mmax(C(2 * k) / lg, C(1)))
    b = C(2) * ln(C(k) * mag(Cb) / C(eps)) / lg
    return a + b


def lemma_a1_holds(a, b, t) -> bool:
    """t >= a ln t + b, decided exactly."""
    return magnitude_cmp(mag(t), mag(a) * ln(t) + mag(b)) >= 0


def nonrec_bound(n: int, d: int, tau: int, eps, consts: BoundConstants | None = None) -> Mag:
    """(1/eps)^(2^n) * 2^((tau d)^(L n)), with eps rational or a magnitude."""
    consts = consts or BoundConstants()
    inv = C(1 / to_fraction(eps)) if not isinstance(eps, Mag) else C(1) / eps
    return inv ** C(2 ** n) * C(2) ** (C(tau * d) ** C(consts.nonrec_L * n))


def rec_bound(n: int, d: int, tau: int, consts: BoundConstants | None = None) -> Mag:
    """Parametric 2^((d tau)^(n^c)) with c = rec_c."""
    consts = consts or BoundConstants()
    return C(2) ** (C(d * tau) ** C(n ** consts.rec_c))


def compact_escape_bound(n0: int, d0: int, tau0: int, consts: BoundConstants | None = None) -> Mag:
    """(2 n0)^3 max(Rec, NonRec(eps = 1/Rec)) at the lifted parameters."""
    consts = consts or BoundConstants()
    if min(n0, d0, tau0) < 1:
        raise ValueError("parameters must be >= 1")
    n = 2 * n0
    d = n0 * d0
    tau = (n0 * d0 * tau0) ** consts.ctau
    rec = rec_bound(n, d, tau, consts)
    nonrec = nonrec_bound(n, d, tau, C(1) / rec, consts)
    return C(2 * n0) ** C(3) * mmax(rec, nonrec)


def switching_budget(n: int) -> int:
    """n^3 - n^2 threshold crossings for the whole system."""
    if n < 1:
        raise ValueError("need n >= 1")
    return n ** 3 - n ** 2


def block_crossing_budget(m: int) -> int:
    """m^2 - m crossings for a single block of size m."""
    if m < 1:
        raise ValueError("need m >= 1")
    return m * m - m
