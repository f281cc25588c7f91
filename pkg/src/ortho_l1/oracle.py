"""Brute-force reference values for the L1 moments.

The domain is cut at the zeros of ``Q_n`` (and at 0 for odd moments on
symmetric-range families), so the integrand keeps one sign on every panel.
Each panel is integrated with a fixed Gauss-Legendre rule and bisected until
the panel estimate and the sum over its two halves agree.  Panels touching an
endpoint where the weight has a non-integer power use a Gauss-Jacobi rule
carrying that power instead.  Infinite ranges are truncated at a point where
an explicit majorant of the integrand's tail is negligible.

Nothing in here touches :mod:`ortho_l1.rules`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaincc, roots_jacobi

from . import families as fam
from .errors import CapabilityError, DomainError, NumericalError
from .families import FamilySpec
from .zeros import compute_zeros

BASE_ORDER = 31
MAX_DEPTH = 40
REL_TOL = 1e-13
# pointwise size of the integrand at the truncation point
CUTOFF = 1e-22
TAIL_REL = 1e-14
I_MAX = 60
SIGN_SAMPLES = 16


@dataclass(frozen=True)
class OracleResult:
    value: float
    est_abs_error: float
    panels: int
    truncation_point: Optional[float] = None


@lru_cache(maxsize=None)
def _legendre(order):
    return leggauss(order)


@lru_cache(maxsize=None)
def _jacobi_end(order, power, side):
    # weight (1-x)^power for a right-end singularity, (1+x)^power for a left one
    if side == "right":
        return roots_jacobi(order, power, 0.0)
    return roots_jacobi(order, 0.0, power)


@dataclass(frozen=True)
class _Panel:
    lo: float
    hi: float
    # exponent of the weight singularity at lo ("left") or hi ("right"), if any
    side: Optional[str] = None
    power: float = 0.0

    def split(self):
        mid = 0.5 * (self.lo + self.hi)
        left = _Panel(self.lo, mid, self.side if self.side == "left" else None, self.power)
        right = _Panel(mid, self.hi, self.side if self.side == "right" else None, self.power)
        return left, right

    def rule(self, order, interval):
        """Nodes, distances to the interval ends and effective weights.

        The distances are formed from the panel geometry, not from ``b - t``,
        so they keep full relative accuracy next to an endpoint.
        """
        a, b = interval
        half = 0.5 * (self.hi - self.lo)
        if self.side is None:
            x, w = _legendre(order)
        else:
            x, w = _jacobi_end(order, self.power, self.side)
        t = self.lo + half * (x + 1.0)
        to_hi = (b - self.hi) + half * (1.0 - x)
        from_lo = (self.lo - a) + half * (1.0 + x)
        if self.side is None:
            return t, to_hi, from_lo, half * w
        factor = to_hi if self.side == "right" else from_lo
        return t, to_hi, from_lo, half ** (self.power + 1.0) * w / factor**self.power


def _singular_power(p):
    """Endpoint exponent that needs a Gauss-Jacobi panel, or None."""
    if p == 0 or (p > 0 and p == math.floor(p)):
        return None
    return p


class _Integrand:
    """``t^i/i! q_n(t)``; Jacobi weights are built from the end distances."""

    def __init__(self, spec, n, i):
        self.spec = spec
        self.n = n
        self.i = i
        self.inv_fact = 1.0 / math.factorial(i)
        if spec.kind == fam.JACOBI:
            self.inv_k = math.exp(-fam.log_norm_constant(spec, n))

    def __call__(self, t, to_hi=None, from_lo=None):
        if self.spec.kind == fam.JACOBI:
            if to_hi is None:
                to_hi, from_lo = 1.0 - t, 1.0 + t
            w = to_hi**self.spec.alpha * from_lo**self.spec.beta
            q = w * fam.eval_polynomial(self.spec, self.n, t) * self.inv_k
        else:
            q = fam.eval_normalized(self.spec, self.n, t).value
        return t**self.i * self.inv_fact * q


def _check(n, i):
    n = fam.check_degree(n)
    if isinstance(i, bool) or int(i) != i or i < 0:
        raise DomainError(f"moment order must be a non-negative integer, got {i!r}")
    if i > I_MAX:
        raise CapabilityError(f"moment order {i} exceeds the cap {I_MAX}")
    return n, int(i)


# --------------------------------------------------------------------------
# tails of the infinite ranges


def _log_coefficients(spec: FamilySpec, n: int):
    """``(powers, log|coef|)`` of the monomial expansion of ``Q_n``."""
    if spec.kind == fam.LAGUERRE:
        a = spec.alpha
        k = np.arange(n + 1)
        logc = np.array(
            [math.lgamma(n + a + 1) - math.lgamma(n - j + 1) - math.lgamma(a + j + 1) - math.lgamma(j + 1) for j in k]
        )
        return k, logc
    m = np.arange(n // 2 + 1)
    powers = n - 2 * m
    logc = np.array(
        [math.lgamma(n + 1) + p * math.log(2.0) - math.lgamma(j + 1) - math.lgamma(p + 1) for j, p in zip(m, powers)]
    )
    return powers, logc


def _log_majorant(spec, n, i, t):
    """``log`` of a pointwise majorant of ``|t|^i/i! |q_n(t)|`` for large ``|t|``."""
    powers, logc = _log_coefficients(spec, n)
    log_pref = -fam.log_norm_constant(spec, n) - math.lgamma(i + 1)
    if spec.kind == fam.LAGUERRE:
        terms = logc + (spec.alpha + i + powers) * math.log(t) - t
    else:
        terms = logc + (i + powers) * math.log(t) - t * t
    return log_pref + _logsumexp(terms)


def _log_tail(spec, n, i, T):
    """``log`` of a majorant of the integral of ``|t|^i/i! |q_n|`` beyond the cut."""
    powers, logc = _log_coefficients(spec, n)
    log_pref = -fam.log_norm_constant(spec, n) - math.lgamma(i + 1)
    out = []
    with np.errstate(divide="ignore"):
        for p, lc in zip(powers, logc):
            if spec.kind == fam.LAGUERRE:
                s = spec.alpha + i + p + 1
                # int_T^inf t^(s-1) e^-t dt = Gamma(s) Q(s, T)
                out.append(lc + math.lgamma(s) + np.log(gammaincc(s, T)))
            else:
                s = 0.5 * (i + p + 1)
                # both tails: 2 * (1/2) Gamma(s) Q(s, T^2)
                out.append(lc + math.lgamma(s) + np.log(gammaincc(s, T * T)))
    return log_pref + _logsumexp(np.array(out))


def _logsumexp(x):
    x = np.asarray(x, dtype=float)
    top = np.max(x)
    if not np.isfinite(top):
        return top
    return top + math.log(np.sum(np.exp(x - top)))


def _initial_cut(spec, n, i, zeros):
    biggest = float(np.max(np.abs(zeros))) if len(zeros) else 0.0
    if spec.kind == fam.LAGUERRE:
        peak = spec.alpha + i + n + 1.0
    else:
        peak = math.sqrt(0.5 * (i + n) + 1.0)
    T = max(1.5 * biggest, peak, 1.0)
    target = math.log(CUTOFF)
    while _log_majorant(spec, n, i, T) > target:
        T *= 1.1
    return T


# --------------------------------------------------------------------------
# adaptive panel integration


def _integrate_panels(f, panels, order, interval, scale_hint=None):
    """Adaptive bisection; returns per-panel values, error estimates and count."""
    values, errors = [], []
    coarse = _evaluate(f, panels, order, interval)
    scale = scale_hint if scale_hint is not None else float(np.sum(np.abs(coarse)))
    active = list(zip(panels, coarse))
    accepted = 0
    for depth in range(MAX_DEPTH + 1):
        if not active:
            break
        if depth == MAX_DEPTH:
            worst = max(active, key=lambda pc: pc[0].hi - pc[0].lo)[0]
            raise NumericalError(
                "panel bisection did not converge",
                {"depth": depth, "worst_panel": (worst.lo, worst.hi), "unconverged": len(active)},
            )
        children = [c for p, _ in active for c in p.split()]
        fine = _evaluate(f, children, order, interval)
        nxt = []
        for k, (panel, est) in enumerate(active):
            a, b = fine[2 * k], fine[2 * k + 1]
            refined = a + b
            diff = abs(refined - est)
            if diff <= REL_TOL * abs(refined) or diff <= 1e-16 * scale:
                values.append((panel.lo, refined))
                errors.append(diff)
                accepted += 1
            else:
                nxt.append((children[2 * k], a))
                nxt.append((children[2 * k + 1], b))
        active = nxt
    # restore left-to-right order so the reduction does not depend on the schedule
    values.sort(key=lambda lv: lv[0])
    return [v for _, v in values], errors, accepted


def _evaluate(f, panels, order, interval):
    rules = [p.rule(order, interval) for p in panels]
    vals = f(*(np.concatenate([r[k] for r in rules]) for k in range(3)))
    out = []
    start = 0
    for r in rules:
        w = r[3]
        out.append(math.fsum(w * vals[start:start + len(w)]))
        start += len(w)
    return out


def _breakpoints(spec, zeros, i):
    pts = list(zeros)
    if spec.kind != fam.LAGUERRE and i % 2 == 1:
        pts.append(0.0)
    if spec.kind == fam.JACOBI and not pts:
        pts.append(0.0)
    return sorted(set(pts))


def _panels_between(spec, points):
    panels = []
    lo_pow = hi_pow = None
    if spec.kind == fam.LAGUERRE:
        lo_pow = _singular_power(spec.alpha)
    elif spec.kind == fam.JACOBI:
        lo_pow = _singular_power(spec.beta)
        hi_pow = _singular_power(spec.alpha)
    a, b = spec.interval
    for k, (lo, hi) in enumerate(zip(points[:-1], points[1:])):
        if hi <= lo:
            continue
        if k == 0 and lo == a and lo_pow is not None:
            panels.append(_Panel(lo, hi, "left", lo_pow))
        elif k == len(points) - 2 and hi == b and hi_pow is not None:
            panels.append(_Panel(lo, hi, "right", hi_pow))
        else:
            panels.append(_Panel(lo, hi))
    return panels


def _check_signs(f, panels):
    k = np.arange(1, SIGN_SAMPLES + 1)
    cheb = np.cos((2 * k - 1) * math.pi / (2 * SIGN_SAMPLES))
    for p in panels:
        x = 0.5 * (p.lo + p.hi) + 0.5 * (p.hi - p.lo) * cheb
        s = np.sign(f(x))
        s = s[s != 0]
        if len(s) and not (np.all(s > 0) or np.all(s < 0)):
            raise NumericalError("integrand changes sign inside a panel", {"panel": (p.lo, p.hi)})


def _run(spec: FamilySpec, n: int, i: int, order: int):
    n, i = _check(n, i)
    zeros = compute_zeros(spec, n).zeros if n >= 1 else np.array([])
    f = _Integrand(spec, n, i)
    inner = _breakpoints(spec, zeros, i)
    T = None
    if spec.kind == fam.LAGUERRE:
        T = _initial_cut(spec, n, i, zeros)
        points = [0.0] + [p for p in inner if p > 0] + [T]
    elif spec.kind == fam.HERMITE:
        T = _initial_cut(spec, n, i, zeros)
        points = [-T] + inner + [T]
    else:
        points = [-1.0] + inner + [1.0]
    panels = _panels_between(spec, points)
    _check_signs(f, panels)
    vals, errs, count = _integrate_panels(f, panels, order, spec.interval)
    tail = 0.0
    if T is not None:
        # extend the cut until the tail majorant is negligible
        for _ in range(60):
            abs_val = math.fsum(abs(v) for v in vals)
            tail = math.exp(_log_tail(spec, n, i, T))
            if tail <= TAIL_REL * abs_val or (abs_val == 0.0 and tail == 0.0):
                break
            T_new = 1.5 * T
            extra = [_Panel(T, T_new)]
            if spec.kind == fam.HERMITE:
                extra.insert(0, _Panel(-T_new, -T))
            v2, e2, c2 = _integrate_panels(f, extra, order, spec.interval, scale_hint=abs_val)
            vals, errs, count = vals + v2, errs + e2, count + c2
            T = T_new
        else:
            raise NumericalError("could not certify the truncated tail", {"cut": T, "tail": tail})
    return vals, math.fsum(errs) + tail, count, T


def oracle_moment(spec: FamilySpec, n: int, i: int, order: int = BASE_ORDER) -> OracleResult:
    """``int |t|^i/i! |q_n(t)| dt`` by panel quadrature between the zeros."""
    vals, err, count, T = _run(spec, n, i, order)
    return OracleResult(math.fsum(abs(v) for v in vals), err, count, T)


def oracle_signed_moment(spec: FamilySpec, n: int, i: int, order: int = BASE_ORDER) -> OracleResult:
    """``int t^i/i! q_n(t) dt`` on the same panels (no absolute value)."""
    vals, err, count, T = _run(spec, n, i, order)
    return OracleResult(math.fsum(vals), err, count, T)
