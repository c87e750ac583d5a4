"""Simultaneous Dirichlet approximation and Kronecker target search.

Angles arg(lambda)/2pi are transcendental in general, so they are handled
through rigorous enclosures: ``mpmath.iv.atan2`` on a dyadic box around
lambda. A decision is only taken once the enclosure separates it; the
precision doubles until that happens.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from mpmath import iv, libmp
from sympy import cyclotomic_poly, totient

from ..core.algebraic import AlgebraicNumber
from ..core.interval import CI
from ..core.rational import to_fraction
from ..core import roots as _roots
from ..errors import NotFoundWithinCap, NotModulusOne, TargetNotInClosure, Undecided
from ..linalg.algexpr import AlgExpr
from ..linalg.jordan import is_modulus_one

# -- real values with enclosures -------------------------------------------


def _raw_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


class RealValue:
    """A real number known through enclosures; ``exact`` is set for rationals."""

    exact: Fraction | None = None

    def enclose(self, prec: int) -> tuple[Fraction, Fraction]:
        raise NotImplementedError


class RationalValue(RealValue):
    def __init__(self, q):
        self.exact = to_fraction(q)

    def enclose(self, prec):
        return self.exact, self.exact

    def __repr__(self):
        return f"RationalValue({self.exact})"


class AlgebraicValue(RealValue):
    def __init__(self, a: AlgebraicNumber):
        if not a.is_real():
            raise ValueError("expected a real algebraic number")
        self.a = a
        if a.is_rational():
            self.exact = a.as_fraction()

    def enclose(self, prec):
        r = self.a.real_enclosure(prec)
        return r.lower, r.upper


class Angle(RealValue):
    """arg(lambda) / (2 pi) in [0, 1) for a modulus-one algebraic lambda."""

    def __init__(self, lam: AlgebraicNumber):
        self.lam = lam
        if lam.is_real():
            # the only real points on the circle are +-1
            self.exact = Fraction(0) if lam.sign() > 0 else Fraction(1, 2)
        self._upper = not lam.is_real() and _im_sign(lam) > 0
        if self.exact is None:
            k = root_of_unity_order(lam)
            if k:
                self.exact = self._exact_fraction(k)

    def enclose(self, prec):
        if self.exact is not None:
            return self.exact, self.exact
        z = self.lam.enclosure(prec + 8)
        old = iv.prec
        iv.prec = prec + 8
        try:
            re = iv.make_mpf((libmp.from_man_exp(z.re.lo, -z.re.p), libmp.from_man_exp(z.re.hi, -z.re.p)))
            im = iv.make_mpf((libmp.from_man_exp(z.im.lo, -z.im.p), libmp.from_man_exp(z.im.hi, -z.im.p)))
            if self._upper:
                # angle in (0, pi): atan2 is continuous there
                a = iv.atan2(im, re) / (2 * iv.pi)
            else:
                # angle in (pi, 2 pi): measure from the conjugate
                a = 1 - iv.atan2(-im, re) / (2 * iv.pi)
        finally:
            iv.prec = old
        lo, hi = a._mpi_
        return _raw_fraction(lo), _raw_fraction(hi)

    def _exact_fraction(self, k: int) -> Fraction:
        # primitive k-th roots sit 1/k apart, so a coarse enclosure picks the numerator
        self.exact = None
        lo, hi = self.enclose(32 + 2 * k.bit_length())
        return Fraction(round((lo + hi) / 2 * k), k)

    def __repr__(self):
        return f"Angle({self.lam!r})"


def root_of_unity_order(lam: AlgebraicNumber) -> int:
    """k if lam is a primitive k-th root of unity, else 0.

    The minimal polynomial must then be the k-th cyclotomic polynomial, and
    phi(k) = deg forces k <= 2 deg^2, so the search is finite.
    """
    d = lam.degree
    coeffs = lam.minpoly.coeffs
    if coeffs[-1] != 1 or abs(coeffs[0]) != 1:
        return 0
    for k in range(1, 2 * d * d + 3):
        if totient(k) == d and tuple(int(c) for c in reversed(cyclotomic_poly(k, polys=True).all_coeffs())) == tuple(coeffs):
            return k
    return 0


def _im_sign(lam: AlgebraicNumber) -> int:
    p = 64
    while p <= _roots.PRECISION_CAP:
        s = lam.enclosure(p).im.sign()
        if s:
            return s
        p *= 2
    raise Undecided("imaginary part sign not separated")


def as_real_value(x) -> RealValue:
    if isinstance(x, RealValue):
        return x
    if isinstance(x, AlgebraicNumber):
        return AlgebraicValue(x)
    return RationalValue(x)


# -- Dirichlet ---------------------------------------------------------------


def _nearest(q: int, v: RealValue) -> int:
    if v.exact is not None:
        return floor(q * v.exact + Fraction(1, 2))
    p = 64
    while p <= _roots.PRECISION_CAP:
        lo, hi = v.enclose(p)
        a, b = floor(q * lo + Fraction(1, 2)), floor(q * hi + Fraction(1, 2))
        if a == b:
            return a
        p *= 2
    raise Undecided("nearest integer not separated below the precision cap")


def _err_interval(q: int, ps: Sequence[int], vals: Sequence[RealValue], prec: int) -> tuple[Fraction, Fraction]:
    """Enclosure of max_j |q phi_j - p_j|."""
    lo_max, hi_max = Fraction(0), Fraction(0)
    for p, v in zip(ps, vals):
        lo, hi = v.enclose(prec)
        a, b = q * lo - p, q * hi - p
        if a >= 0:
            e_lo, e_hi = a, b
        elif b <= 0:
            e_lo, e_hi = -b, -a
        else:
            e_lo, e_hi = Fraction(0), max(-a, b)
        lo_max, hi_max = max(lo_max, e_lo), max(hi_max, e_hi)
    return lo_max, hi_max


def _exact_err(q, ps, vals) -> Fraction | None:
    if all(v.exact is not None for v in vals):
        return max((abs(q * v.exact - p) for p, v in zip(ps, vals)), default=Fraction(0))
    return None


@dataclass
class DirichletResult:
    q: int
    p: list
    error: tuple  # (lo, hi) enclosure of max_j |q phi_j - p_j|
    regime: str  # "q<=M" or "q<=M^N"
    bound_holds: bool

    def to_json(self) -> dict:
        from ..core.rational import fmt_rational
        return {"q": self.q, "p": self.p, "error": [fmt_rational(e) for e in self.error],
                "regime": self.regime, "bound_holds": self.bound_holds}


def _less(q1, p1, q2, p2, vals) -> bool:
    """Is the error of q1 strictly below that of q2? Ties count as not less."""
    e1, e2 = _exact_err(q1, p1, vals), _exact_err(q2, p2, vals)
    if e1 is not None and e2 is not None:
        return e1 < e2
    prec = 64
    while prec <= _roots.PRECISION_CAP // 4:
        a, b = _err_interval(q1, p1, vals, prec), _err_interval(q2, p2, vals, prec)
        if a[1] < b[0]:
            return True
        if a[0] >= b[1]:
            return False
        prec *= 2
    return False


def _below_bound(q, ps, vals, M: int) -> bool:
    """max_j |q phi_j - p_j| < M^(-1/N), i.e. err^N * M < 1."""
    N = len(vals)
    e = _exact_err(q, ps, vals)
    if e is not None:
        return e ** N * M < 1
    prec = 64
    while prec <= _roots.PRECISION_CAP // 4:
        lo, hi = _err_interval(q, ps, vals, prec)
        if hi ** N * M < 1:
            return True
        if lo ** N * M >= 1:
            return False
        prec *= 2
    return False


def dirichlet_solve(phi: Sequence, M: int) -> DirichletResult:
    """The q in [1, M] with the smallest max_j |q phi_j - p_j| (smallest q on ties)."""
    if M < 1:
        raise ValueError("M must be at least 1")
    vals = [as_real_value(v) for v in phi]
    if not vals:
        return DirichletResult(1, [], (Fraction(0), Fraction(0)), "q<=M", True)

    def search(upto):
        best_q, best_p = None, None
        for q in range(1, upto + 1):
            ps = [_nearest(q, v) for v in vals]
            if best_q is None or _less(q, ps, best_q, best_p, vals):
                best_q, best_p = q, ps
        return best_q, best_p

    q, ps = search(M)
    regime = "q<=M"
    ok = _below_bound(q, ps, vals, M)
    if not ok and len(vals) > 1:
        q, ps = search(M ** len(vals))
        regime = "q<=M^N"
        ok = _below_bound(q, ps, vals, M)
    e = _exact_err(q, ps, vals)
    err = (e, e) if e is not None else _err_interval(q, ps, vals, 128)
    return DirichletResult(q, ps, err, regime, ok)


# -- Kronecker target search ---------------------------------------------


def _as_alg(x) -> AlgebraicNumber:
    if isinstance(x, AlgebraicNumber):
        return x
    if isinstance(x, complex):
        raise TypeError("targets must be exact: use AlgebraicNumber.gaussian")
    return AlgebraicNumber.from_rational(to_fraction(x))


def _basis_vectors(basis) -> list:
    if basis is None:
        return []
    return [list(b) for b in getattr(basis, "basis", basis)]


def check_relations(basis, target: Sequence[AlgebraicNumber]) -> None:
    """Raise TargetNotInClosure unless every relation holds exactly at the target."""
    for beta in _basis_vectors(basis):
        prod = AlgExpr.const(1)
        for e, a in zip(beta, target):
            if e == 0:
                continue
            base = AlgExpr.of_algebraic(a if e > 0 else a.conj())
            prod = prod * base ** abs(e)
        if not (prod - 1).is_zero():
            raise TargetNotInClosure(f"target violates relation {beta}")


def _dist2_decide(lams, target, t: int, eps2: Fraction, prec: int):
    """True / False if every |lam_j^t - alpha_j|^2 < eps^2 is decided at prec, else None."""
    guard = t.bit_length() + 8
    all_close = True
    for lam, alpha in zip(lams, target):
        z = lam.enclosure(prec + guard) ** t
        d = (z - alpha.enclosure(prec + guard)).abs2()
        if d.upper < eps2:
            continue
        if d.lower >= eps2:
            return False
        all_close = None
    return all_close


def _close_exact(lams, target, t: int, eps2: Fraction) -> bool:
    for lam, alpha in zip(lams, target):
        diff = AlgExpr.of_algebraic(lam) ** t - AlgExpr.of_algebraic(alpha)
        d2 = diff * diff.conj()
        if (d2 - eps2).sign() >= 0:
            return False
    return True


def is_close(lams, target, t: int, eps, prec: int = 64) -> bool:
    """Exact decision of max_j |lam_j^t - alpha_j| < eps, starting at ``prec`` bits."""
    eps2 = to_fraction(eps) ** 2
    p = prec
    while p <= 4096:
        r = _dist2_decide(lams, target, t, eps2, p)
        if r is not None:
            return r
        p *= 2
    return _close_exact(lams, target, t, eps2)


@dataclass
class KroneckerResult:
    t: int
    distances: list  # float estimates of |lam_j^t - alpha_j|


def kronecker_target_search(lambdas: Sequence[AlgebraicNumber], basis, target: Sequence, eps, cap: int) -> KroneckerResult:
    """Smallest t in [1, cap] with |lam_j^t - alpha_j| < eps for every j."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    lams = [_as_alg(l) for l in lambdas]
    for lam in lams:
        if not is_modulus_one(lam):
            raise NotModulusOne(f"{lam!r} is not on the unit circle")
    target = [_as_alg(a) for a in target]
    if len(target) != len(lams):
        raise ValueError("target and lambdas differ in length")
    for a in target:
        if not is_modulus_one(a):
            raise TargetNotInClosure(f"target coordinate {a!r} is off the unit circle")
    check_relations(basis, target)
    eps = to_fraction(eps)
    eps2 = eps * eps
    prec = 64 + 2 * cap.bit_length()
    steps = [l.enclosure(prec) for l in lams]
    alphas = [a.enclosure(prec) for a in target]
    z = [CI.from_rational(1, prec) for _ in lams]
    best = (None, float("inf"))
    for t in range(1, cap + 1):
        z = [zi * s for zi, s in zip(z, steps)]
        verdict = True
        worst = 0.0
        for zi, a in zip(z, alphas):
            d = (zi - a).abs2()
            worst = max(worst, float(d.mid()))
            if d.lower >= eps2:
                verdict = False
            elif d.upper >= eps2 and verdict:
                verdict = None
        if worst < best[1]:
            best = (t, worst ** 0.5)
        if verdict is None:
            verdict = is_close(lams, target, t, eps, prec)
        if verdict:
            dists = []
            for lam, a in zip(lams, target):
                w = lam.enclosure(prec) ** t - a.enclosure(prec)
                dists.append(float(w.abs2().mid()) ** 0.5)
            return KroneckerResult(t, dists)
    exc = NotFoundWithinCap(f"no t <= {cap} brings the orbit within {eps} of the target")
    exc.best = best
    raise exc
