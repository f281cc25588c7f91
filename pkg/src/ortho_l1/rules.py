"""Closed-form L1 rules over polynomial zeros, plus Cauchy-Schwarz upper bounds.

All rules compute

    integral over (a, b) of |t|^i / i! * |q_n(t)| dt,    0 <= i <= n - 1,

as a signed sum of antiderivative values at the zeros of ``Q_n``.  The
antiderivative of ``t^i/i! q_n`` is a short combination of shifted-parameter
functions ``q_{n-1-k}``; between consecutive zeros ``q_n`` keeps its sign, so
the absolute integral telescopes to twice the antiderivative at every zero,
with alternating signs.  Odd ``i`` on a symmetric-range family adds a split
at the origin, which shows up as a middle term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import families as fam
from .errors import CapabilityError, DomainError, UsageError
from .families import FamilySpec
from .zeros import compute_zeros

I_MAX = 60


@dataclass(frozen=True)
class MomentRequest:
    family: FamilySpec
    n: int
    i: int = 0


@dataclass(frozen=True)
class SignedTermLedger:
    """Per-zero summands of a rule and their compensated total.

    ``terms`` holds ``(zero_index, value)`` pairs with 1-based indices.
    """

    terms: tuple
    middle_term: Optional[float]
    total: float

    @property
    def values(self) -> list:
        vals = [v for _, v in self.terms]
        if self.middle_term is not None:
            vals.append(self.middle_term)
        return vals

    @property
    def naive_total(self) -> float:
        out = 0.0
        for v in self.values:
            out += v
        return out

    @property
    def abs_sum(self) -> float:
        return math.fsum(abs(v) for v in self.values)


def _ledger(indices, values, middle=None) -> SignedTermLedger:
    terms = tuple((int(j), float(v)) for j, v in zip(indices, values))
    parts = [v for _, v in terms]
    if middle is not None:
        middle = float(middle)
        parts.append(middle)
    return SignedTermLedger(terms, middle, math.fsum(parts))


def _check_moment_args(n, i):
    n = fam.check_degree(n)
    if n < 1:
        raise UsageError("n must be at least 1")
    if isinstance(i, bool) or int(i) != i or i < 0:
        raise DomainError(f"moment order must be a non-negative integer, got {i!r}")
    i = int(i)
    if i > I_MAX:
        raise CapabilityError(f"moment order {i} exceeds the cap {I_MAX}")
    if i >= n:
        raise UsageError(f"no closed-form rule for i >= n (i={i}, n={n}); use the oracle instead")
    return n, i


def _q(spec: FamilySpec, n: int, t):
    return fam._normalized(spec, n, t)[0]


def _column_sums(rows):
    """Compensated sum over ``k`` of a list of per-zero arrays."""
    mat = np.vstack(rows)
    return np.array([math.fsum(mat[:, j]) for j in range(mat.shape[1])])


def _signs(m, offset):
    return np.where((m + offset) % 2 == 0, 1.0, -1.0)


# --------------------------------------------------------------------------
# Laguerre


def laguerre_moment(alpha: float, n: int, i: int) -> SignedTermLedger:
    """``int_0^inf t^i/i! |l_n^(alpha)(t)| dt`` from the zeros of ``L_n^(alpha)``."""
    spec = FamilySpec.laguerre(alpha)
    n, i = _check_moment_args(n, i)
    t = compute_zeros(spec, n).zeros
    rows = []
    for k in range(i + 1):
        q = _q(FamilySpec.laguerre(alpha + 1 + k), n - 1 - k, t)
        rows.append((-1.0) ** k / math.factorial(i - k) * t ** (i - k) * q)
    inner = _column_sums(rows)
    m = np.arange(1, n + 1)
    return _ledger(m, 2.0 * _signs(m, 1) * inner)


def laguerre_norm(alpha: float, n: int) -> SignedTermLedger:
    """``||l_n^(alpha)||_1 = 2 sum (-1)^(m+1) l_{n-1}^(alpha)(t_m)``."""
    spec = FamilySpec.laguerre(alpha)
    n, _ = _check_moment_args(n, 0)
    t = compute_zeros(spec, n).zeros
    m = np.arange(1, n + 1)
    return _ledger(m, 2.0 * _signs(m, 1) * _q(spec, n - 1, t))


def laguerre_top_moment(alpha: float, n: int) -> SignedTermLedger:
    """``int_0^inf t^(n-1) |l_n^(alpha)(t)| dt`` (no 1/(n-1)! factor)."""
    spec = FamilySpec.laguerre(alpha)
    n, _ = _check_moment_args(n, 0)
    t = compute_zeros(spec, n).zeros
    m = np.arange(1, n + 1)
    return _ledger(m, 2.0 / (alpha + n) * _signs(m, 1) * t**n * _q(spec, n - 1, t))


def laguerre_sobolev_norm(alpha: float, n: int, k: int) -> SignedTermLedger:
    """``int |d^k/dt^k l_n^(alpha)| dt``, which equals ``||l_{n+k}^(alpha-k)||_1``."""
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError(f"derivative order must be a positive integer, got {k!r}")
    if not alpha > k - 1:
        raise DomainError(f"the Sobolev rule needs alpha > k - 1 (alpha={alpha}, k={k})")
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    return laguerre_norm(alpha - k, int(n) + int(k))


# --------------------------------------------------------------------------
# Hermite


def _hermite_coef(n, i, k):
    # (n-1-k)! / (n! 2^k (i-k)!)
    return 1.0 / (math.prod(range(n - k, n + 1)) * 2.0**k * math.factorial(i - k))


def hermite_moment(n: int, i: int) -> SignedTermLedger:
    """``int |t|^i/i! |h_n(t)| dt`` from the zeros of ``H_n``.

    Even ``i`` uses a single alternating sum.  Odd ``i`` splits at the
    origin: for even ``n`` a middle term with ``h_{n-1-i}(0)`` appears, for
    odd ``n`` the zero at the origin drops out of the sum.
    """
    spec = FamilySpec.hermite()
    n, i = _check_moment_args(n, i)
    t = compute_zeros(spec, n).zeros
    rows = [_hermite_coef(n, i, k) * t ** (i - k) * _q(spec, n - 1 - k, t) for k in range(i + 1)]
    inner = _column_sums(rows)
    m = np.arange(1, n + 1)
    if i % 2 == 0:
        return _ledger(m, _signs(m, n) * inner)
    if n % 2 == 0:
        half = n // 2
        signs = np.where(m <= half, _signs(m, 1), _signs(m, 0))
        middle = (-1.0) ** half * _hermite_coef(n, i, i) * _q(spec, n - 1 - i, 0.0)
        return _ledger(m, signs * inner, middle)
    half = (n - 1) // 2
    keep = m != half + 1
    signs = np.where(m <= half, _signs(m, 0), _signs(m, 1))
    return _ledger(m[keep], (signs * inner)[keep])


def hermite_norm(n: int) -> SignedTermLedger:
    """``||h_n||_1 = (1/n) sum (-1)^(m+n) h_{n-1}(t_m)``."""
    spec = FamilySpec.hermite()
    n, _ = _check_moment_args(n, 0)
    t = compute_zeros(spec, n).zeros
    m = np.arange(1, n + 1)
    return _ledger(m, _signs(m, n) * _q(spec, n - 1, t) / n)


# --------------------------------------------------------------------------
# Jacobi


def _jacobi_coef(n, s, i, k):
    # 2^(k+2) Gamma(n+s+1)/Gamma(n+k+s+2) / (i-k)!, ratio as a rising product
    return 2.0 ** (k + 2) / (math.prod(n + s + 1 + j for j in range(k + 1)) * math.factorial(i - k))


def jacobi_moment(alpha: float, beta: float, n: int, i: int) -> SignedTermLedger:
    """``int_{-1}^1 |t|^i/i! |p_n^(alpha,beta)(t)| dt`` from the zeros of ``P_n``."""
    spec = FamilySpec.jacobi(alpha, beta)
    n, i = _check_moment_args(n, i)
    s = alpha + beta
    zs = compute_zeros(spec, n)
    t = zs.zeros
    rows = []
    for k in range(i + 1):
        q = _q(FamilySpec.jacobi(alpha + 1 + k, beta + 1 + k), n - 1 - k, t)
        rows.append(_jacobi_coef(n, s, i, k) * t ** (i - k) * q)
    inner = _column_sums(rows)
    m = np.arange(1, n + 1)
    if i % 2 == 0:
        return _ledger(m, _signs(m, n) * inner)
    n0 = zs.n0
    signs = np.where(m <= n0, _signs(m, n + 1), _signs(m, n))
    shifted = FamilySpec.jacobi(alpha + 1 + i, beta + 1 + i)
    middle = (-1.0) ** (n0 + n) * _jacobi_coef(n, s, i, i) * _q(shifted, n - 1 - i, 0.0)
    return _ledger(m, signs * inner, middle)


def jacobi_norm(alpha: float, beta: float, n: int) -> SignedTermLedger:
    """``||p_n^(alpha,beta)||_1`` from same-parameter values of ``p_{n-1}`` at the zeros."""
    spec = FamilySpec.jacobi(alpha, beta)
    n, _ = _check_moment_args(n, 0)
    s = alpha + beta
    t = compute_zeros(spec, n).zeros
    # (n+s)/(2n+s-1) is 0/0 at n = 1, s = -1; its limit is 1
    ratio = 1.0 if n == 1 else (n + s) / (2 * n + s - 1)
    coef = 4.0 / (n + s + 1) * ratio * (2 * n + s + 1) / (2 * n + s)
    m = np.arange(1, n + 1)
    return _ledger(m, coef * _signs(m, n) * _q(spec, n - 1, t))


# --------------------------------------------------------------------------
# generic rule over the Rodrigues data


def l1_norm_generic(spec: FamilySpec, n: int) -> SignedTermLedger:
    """``int |Q_n| weight`` (not divided by ``k_n``) from the Rodrigues-formula rule.

    The rule is ``2 mu_{n-1}/|mu_n| sum (-1)^(j+1) weight(t_j) Q(t_j) Q_{n-1}(t_j)``
    where the last factor belongs to the family with weight ``weight * Q``.
    """
    n = fam.check_degree(n)
    if n < 1:
        raise UsageError("the generic rule needs n >= 1; for n = 0 the integral is the weight's mass")
    t = compute_zeros(spec, n).zeros
    if spec.kind == fam.LAGUERRE:
        coef = 2.0 / n
    elif spec.kind == fam.HERMITE:
        coef = 2.0 * (-1.0) ** (n - 1)
    else:
        coef = (-1.0) ** (n - 1) / n
    values = fam.weighted_polynomial(spec.shifted(1), n - 1, t)
    j = np.arange(1, n + 1)
    return _ledger(j, coef * _signs(j, 1) * values)


# --------------------------------------------------------------------------
# dispatch


def moment(spec: FamilySpec, n: int, i: int) -> SignedTermLedger:
    if spec.kind == fam.LAGUERRE:
        return laguerre_moment(spec.alpha, n, i)
    if spec.kind == fam.HERMITE:
        return hermite_moment(n, i)
    return jacobi_moment(spec.alpha, spec.beta, n, i)


def norm(spec: FamilySpec, n: int) -> SignedTermLedger:
    if spec.kind == fam.LAGUERRE:
        return laguerre_norm(spec.alpha, n)
    if spec.kind == fam.HERMITE:
        return hermite_norm(n)
    return jacobi_norm(spec.alpha, spec.beta, n)


# --------------------------------------------------------------------------
# antiderivatives


def antiderivative(spec: FamilySpec, n: int, i: int, t):
    """A primitive of ``t^i/i! q_n(t)`` as a combination of shifted functions."""
    n, i = _check_moment_args(n, i)
    t = np.asarray(t, dtype=float)
    out = []
    for k in range(i + 1):
        if spec.kind == fam.LAGUERRE:
            q = _q(FamilySpec.laguerre(spec.alpha + 1 + k), n - 1 - k, t)
            out.append((-1.0) ** k / math.factorial(i - k) * t ** (i - k) * q)
        elif spec.kind == fam.HERMITE:
            q = _q(spec, n - 1 - k, t)
            out.append(-0.5 * _hermite_coef(n, i, k) * t ** (i - k) * q)
        else:
            s = spec.alpha + spec.beta
            q = _q(FamilySpec.jacobi(spec.alpha + 1 + k, spec.beta + 1 + k), n - 1 - k, t)
            out.append(-0.5 * _jacobi_coef(n, s, i, k) * t ** (i - k) * q)
    return np.sum(out, axis=0)


def antiderivative_slope(spec: FamilySpec, n: int, i: int, t):
    """Derivative of :func:`antiderivative`, assembled from the derivative identities.

    Should reproduce ``t^i/i! q_n(t)``; nothing here differentiates numerically.
    """
    n, i = _check_moment_args(n, i)
    t = np.asarray(t, dtype=float)
    out = []
    for k in range(i + 1):
        power = i - k
        lower = t ** (power - 1) * power if power else 0.0
        if spec.kind == fam.LAGUERRE:
            a = spec.alpha
            # d/dt l_m^(a) = l_{m+1}^(a-1)
            q = _q(FamilySpec.laguerre(a + 1 + k), n - 1 - k, t)
            dq = _q(FamilySpec.laguerre(a + k), n - k, t)
            c = (-1.0) ** k / math.factorial(power)
        elif spec.kind == fam.HERMITE:
            # h_m' = -2(m+1) h_{m+1}
            q = _q(spec, n - 1 - k, t)
            dq = -2.0 * (n - k) * _q(spec, n - k, t)
            c = -0.5 * _hermite_coef(n, i, k)
        else:
            a, b = spec.alpha, spec.beta
            s = a + b
            # p_m^(a',b')' = -(m+a'+b')/2 p_{m+1}^(a'-1,b'-1)
            q = _q(FamilySpec.jacobi(a + 1 + k, b + 1 + k), n - 1 - k, t)
            dq = -0.5 * (n + k + s + 1) * _q(FamilySpec.jacobi(a + k, b + k), n - k, t)
            c = -0.5 * _jacobi_coef(n, s, i, k)
        out.append(c * (lower * q + t**power * dq))
    return np.sum(out, axis=0)


# --------------------------------------------------------------------------
# Cauchy-Schwarz bounds


def _log_abs_gamma(x):
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"Gamma has a pole at {x}")
    return math.lgamma(x)


def _gamma_sign(x):
    if x > 0:
        return 1
    return -1 if math.ceil(-x) % 2 else 1


def bound_laguerre(alpha: float, n: int, i: int) -> float:
    """``(n! Gamma(2i+alpha+1) / ((i!)^2 Gamma(alpha+n+1)))^(1/2)``.

    Accepts the wider range ``alpha > -(i+1)``; raises :class:`DomainError`
    where the expression under the root is not positive.
    """
    n = fam.check_degree(n)
    if n < 1 or i < 1:
        raise DomainError("the Laguerre bound needs n >= 1 and i >= 1")
    if not alpha > -(i + 1):
        raise DomainError(f"the Laguerre bound needs alpha > -(i+1), got alpha={alpha}, i={i}")
    if _gamma_sign(alpha + n + 1) < 0:
        raise DomainError("bound undefined: Gamma(alpha+n+1) < 0")
    log_sq = (
        math.lgamma(n + 1) + math.lgamma(2 * i + alpha + 1) - 2 * math.lgamma(i + 1) - _log_abs_gamma(alpha + n + 1)
    )
    return math.exp(0.5 * log_sq)


def bound_hermite(n: int, i: int) -> float:
    """``1 / sqrt(2^n n! i! sqrt(pi))``."""
    n = fam.check_degree(n)
    if n < 1 or i < 1:
        raise DomainError("the Hermite bound needs n >= 1 and i >= 1")
    log_sq = n * math.log(2.0) + math.lgamma(n + 1) + math.lgamma(i + 1) + 0.5 * math.log(math.pi)
    return math.exp(-0.5 * log_sq)


def bound_jacobi(alpha: float, beta: float, n: int, i: int) -> float:
    """``sqrt(c_n) * ((2i)!/Gamma(2i+beta+2) + (2i)!/Gamma(2i+alpha+2))^(1/2)``.

    This bounds ``int |t|^i |p_n|`` (no ``1/i!``) only up to the unstated
    constants from splitting the integral at 0, which are taken as 1 here.
    """
    spec = FamilySpec.jacobi(alpha, beta)
    n = fam.check_degree(n)
    if n < 1 or i < 1:
        raise DomainError("the Jacobi bound needs n >= 1 and i >= 1")
    c_n = math.exp(-fam.log_norm_constant(spec, n))
    tail = math.exp(math.lgamma(2 * i + 1) - math.lgamma(2 * i + beta + 2)) + math.exp(
        math.lgamma(2 * i + 1) - math.lgamma(2 * i + alpha + 2)
    )
    return math.sqrt(c_n * tail)


def bound(spec: FamilySpec, n: int, i: int) -> float:
    """Bound on the quantity each family's estimate controls.

    For Laguerre and Hermite that is the moment itself; for Jacobi it is
    ``i!`` times the moment.
    """
    if spec.kind == fam.LAGUERRE:
        return bound_laguerre(spec.alpha, n, i)
    if spec.kind == fam.HERMITE:
        return bound_hermite(n, i)
    return bound_jacobi(spec.alpha, spec.beta, n, i)
