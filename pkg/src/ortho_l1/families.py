"""Classical orthogonal polynomial families and their normalized weighted functions.

Three families are supported::

    laguerre(alpha)       weight t^alpha e^{-t}          on (0, inf)
    hermite()             weight e^{-t^2}                on (-inf, inf)
    jacobi(alpha, beta)   weight (1-t)^alpha (1+t)^beta  on (-1, 1)

``Q_n`` denotes the classical polynomial (L_n^(alpha), H_n, P_n^(alpha,beta)),
``k_n`` its squared L2(weight) norm and ``q_n = weight * Q_n / k_n`` the
normalized weighted function whose L1 moments the rest of the package computes.

Every evaluator accepts a scalar or an array of points and returns the same
shape back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CapabilityError, DomainError, UsageError

N_MAX = 120

LAGUERRE = "laguerre"
HERMITE = "hermite"
JACOBI = "jacobi"
KINDS = (LAGUERRE, HERMITE, JACOBI)

# Rescaling step for the polynomial recurrence (exact power of two).
_SCALE_EXP = 300
_SCALE_LIMIT = 2.0**_SCALE_EXP
# Above this |log| a factor is handled in log space.
_LOG_LIMIT = 300.0


@dataclass(frozen=True)
class FamilySpec:
    """One classical family with its parameters.

    Use the :meth:`laguerre`, :meth:`hermite` and :meth:`jacobi` constructors;
    they validate the parameters (alpha, beta > -1).
    """

    kind: str
    alpha: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown family {self.kind!r}")
        if self.kind == HERMITE:
            if self.alpha is not None or self.beta is not None:
                raise DomainError("the Hermite family takes no parameters")
            return
        if self.alpha is None or not math.isfinite(self.alpha) or self.alpha <= -1:
            raise DomainError(f"alpha must be a finite number > -1, got {self.alpha}")
        object.__setattr__(self, "alpha", float(self.alpha))
        if self.kind == LAGUERRE:
            if self.beta is not None:
                raise DomainError("the Laguerre family takes no beta")
            return
        if self.beta is None or not math.isfinite(self.beta) or self.beta <= -1:
            raise DomainError(f"beta must be a finite number > -1, got {self.beta}")
        object.__setattr__(self, "beta", float(self.beta))

    @classmethod
    def laguerre(cls, alpha: float = 0.0) -> "FamilySpec":
        return cls(LAGUERRE, alpha)

    @classmethod
    def hermite(cls) -> "FamilySpec":
        return cls(HERMITE)

    @classmethod
    def jacobi(cls, alpha: float = 0.0, beta: float = 0.0) -> "FamilySpec":
        return cls(JACOBI, alpha, beta)

    @classmethod
    def make(cls, kind: str, alpha=None, beta=None) -> "FamilySpec":
        """Build a spec from loosely typed input, ignoring parameters a family lacks."""
        kind = kind.lower()
        if kind == HERMITE:
            return cls.hermite()
        if kind == LAGUERRE:
            return cls.laguerre(0.0 if alpha is None else alpha)
        if kind == JACOBI:
            return cls.jacobi(0.0 if alpha is None else alpha, 0.0 if beta is None else beta)
        raise DomainError(f"unknown family {kind!r}")

    @property
    def interval(self) -> tuple[float, float]:
        if self.kind == LAGUERRE:
            return (0.0, math.inf)
        if self.kind == HERMITE:
            return (-math.inf, math.inf)
        return (-1.0, 1.0)

    @property
    def symmetric(self) -> bool:
        """True when the weight is even, so the zero sets are symmetric about 0."""
        return self.kind == HERMITE or (self.kind == JACOBI and self.alpha == self.beta)

    def shifted(self, k: int) -> "FamilySpec":
        """Raise every parameter by ``k`` (the weight times ``Q`` to the ``k``)."""
        if self.kind == HERMITE:
            return self
        if self.kind == LAGUERRE:
            return FamilySpec(LAGUERRE, self.alpha + k)
        return FamilySpec(JACOBI, self.alpha + k, self.beta + k)

    def params(self) -> dict:
        out = {"family": self.kind}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.beta is not None:
            out["beta"] = self.beta
        return out

    def __str__(self):
        if self.kind == HERMITE:
            return "hermite"
        if self.kind == LAGUERRE:
            return f"laguerre(alpha={self.alpha:g})"
        return f"jacobi(alpha={self.alpha:g}, beta={self.beta:g})"


@dataclass(frozen=True)
class NormalizedFunctionValue:
    value: object  # float or ndarray
    log_scale_used: bool


def check_degree(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    n = int(n)
    if n > N_MAX:
        raise CapabilityError(f"degree {n} exceeds N_MAX={N_MAX} for double precision")
    return n


def _finish(x, scalar):
    if scalar:
        return float(np.asarray(x).reshape(()))
    return x


def _as_points(t):
    arr = np.asarray(t, dtype=float)
    return arr, arr.ndim == 0


# --------------------------------------------------------------------------
# polynomial recurrences


def _scaled_recurrence(kind, alpha, beta, n, t):
    """Forward three-term recurrence returning ``(mantissa, exp2)``.

    ``Q_n(t) == mantissa * 2**exp2``.  Parameters are not validated, so the
    Laguerre branch also serves the negative-alpha values that show up in
    derivative identities.
    """
    t = np.asarray(t, dtype=float)
    e = np.zeros(t.shape, dtype=np.int64)
    p_prev = np.zeros(t.shape)
    p = np.ones(t.shape)
    if n == 0:
        return p, e
    if kind == LAGUERRE:
        p_prev, p = p, 1.0 + alpha - t
    elif kind == HERMITE:
        p_prev, p = p, 2.0 * t
    else:
        s = alpha + beta
        p_prev, p = p, 0.5 * ((s + 2.0) * t + (alpha - beta))
    for k in range(1, n):
        if kind == LAGUERRE:
            p_next = ((2 * k + 1 + alpha - t) * p - (k + alpha) * p_prev) / (k + 1)
        elif kind == HERMITE:
            p_next = 2.0 * t * p - 2.0 * k * p_prev
        else:
            s = alpha + beta
            c = 2 * k + s
            a_k = 2.0 * (k + 1) * (k + s + 1) * c
            b_k = (c + 1) * ((c + 2) * c * t + (alpha * alpha - beta * beta))
            c_k = 2.0 * (k + alpha) * (k + beta) * (c + 2)
            p_next = (b_k * p - c_k * p_prev) / a_k
        p_prev, p = p, p_next
        big = np.abs(p) > _SCALE_LIMIT
        if big.any():
            p = np.where(big, np.ldexp(p, -_SCALE_EXP), p)
            p_prev = np.where(big, np.ldexp(p_prev, -_SCALE_EXP), p_prev)
            e = e + _SCALE_EXP * big
    return p, e


def _poly(kind, alpha, beta, n, t):
    p, e = _scaled_recurrence(kind, alpha, beta, n, t)
    with np.errstate(over="ignore"):
        return np.ldexp(p, e)


def eval_polynomial(spec: FamilySpec, n: int, t):
    """Value of ``Q_n(t)`` from the family's three-term recurrence."""
    n = check_degree(n)
    t, scalar = _as_points(t)
    return _finish(_poly(spec.kind, spec.alpha, spec.beta, n, t), scalar)


def _rising(x, r):
    out = 1.0
    for j in range(r):
        out *= x + j
    return out


def _falling(x, r):
    out = 1.0
    for j in range(r):
        out *= x - j
    return out


def _poly_derivative(kind, alpha, beta, n, t, order):
    if order > n:
        return np.zeros(np.shape(t))
    if kind == LAGUERRE:
        return (-1.0) ** order * _poly(kind, alpha + order, None, n - order, t)
    if kind == HERMITE:
        return 2.0**order * _falling(n, order) * _poly(kind, None, None, n - order, t)
    s = alpha + beta
    coef = _rising(n + s + 1, order) / 2.0**order
    return coef * _poly(kind, alpha + order, beta + order, n - order, t)


def eval_polynomial_derivative(spec: FamilySpec, n: int, t, order: int = 1):
    """``d^order/dt^order Q_n(t)`` via the families' derivative identities."""
    n = check_degree(n)
    t, scalar = _as_points(t)
    return _finish(_poly_derivative(spec.kind, spec.alpha, spec.beta, n, t, order), scalar)


def explicit_polynomial(spec: FamilySpec, n: int, t):
    """Explicit finite sums for ``Q_n``; slow and cancellation-prone, for testing."""
    t, scalar = _as_points(t)
    if spec.kind == LAGUERRE:
        out = sum((-1) ** k * _binom(n + spec.alpha, n - k) * t**k / math.factorial(k) for k in range(n + 1))
    elif spec.kind == HERMITE:
        out = sum(
            (-1) ** m * math.factorial(n) / (math.factorial(m) * math.factorial(n - 2 * m)) * (2 * t) ** (n - 2 * m)
            for m in range(n // 2 + 1)
        )
    else:
        out = _jacobi_explicit(spec.alpha, spec.beta, n, t)
    return _finish(np.asarray(out, dtype=float) + np.zeros(t.shape), scalar)


def _binom(x, m):
    """Generalized binomial coefficient with real top argument."""
    return _falling(x, m) / math.factorial(m)


def _jacobi_explicit(alpha, beta, n, t):
    # valid for any real alpha, beta
    t = np.asarray(t, dtype=float)
    return sum(
        _binom(n + alpha, n - j) * _binom(n + beta, j) * (t - 1.0) ** j * (t + 1.0) ** (n - j) for j in range(n + 1)
    ) / 2.0**n


# --------------------------------------------------------------------------
# weights and normalization


def _check_points(spec: FamilySpec, t):
    if spec.kind == HERMITE:
        if not np.all(np.isfinite(t)):
            raise DomainError("evaluation point must be finite")
        return
    if spec.kind == LAGUERRE:
        if np.any(t < 0) or not np.all(np.isfinite(t)):
            raise DomainError("Laguerre functions live on [0, inf)")
        if spec.alpha < 0 and np.any(t == 0):
            raise DomainError("Laguerre weight diverges at t=0 for alpha < 0")
        return
    if np.any(np.abs(t) > 1) or not np.all(np.isfinite(t)):
        raise DomainError("Jacobi functions live on [-1, 1]")
    if spec.alpha < 0 and np.any(t == 1):
        raise DomainError("Jacobi weight diverges at t=1 for alpha < 0")
    if spec.beta < 0 and np.any(t == -1):
        raise DomainError("Jacobi weight diverges at t=-1 for beta < 0")


def _pow0(base, expo):
    # base**expo with 0**0 == 1 and 0**positive == 0
    with np.errstate(divide="ignore"):
        return np.power(base, expo)


def _weight(spec: FamilySpec, t):
    if spec.kind == LAGUERRE:
        return _pow0(t, spec.alpha) * np.exp(-t)
    if spec.kind == HERMITE:
        return np.exp(-t * t)
    return _pow0(1.0 - t, spec.alpha) * _pow0(1.0 + t, spec.beta)


def _xlogy(x, y):
    with np.errstate(divide="ignore", invalid="ignore"):
        out = x * np.log(y)
    return np.where(y == 0, np.where(x == 0, 0.0, -np.inf), out)


def _log_weight(spec: FamilySpec, t):
    if spec.kind == LAGUERRE:
        return _xlogy(spec.alpha, t) - t
    if spec.kind == HERMITE:
        return -t * t
    return _xlogy(spec.alpha, 1.0 - t) + _xlogy(spec.beta, 1.0 + t)


def weight(spec: FamilySpec, t):
    """The weight function; endpoint values follow the 0**0 == 1 convention."""
    t, scalar = _as_points(t)
    _check_points(spec, t)
    return _finish(_weight(spec, t), scalar)


def log_norm_constant(spec: FamilySpec, n: int) -> float:
    """``ln k_n`` where ``k_n`` is the squared L2(weight) norm of ``Q_n``."""
    n = check_degree(n)
    return _log_k(spec.kind, spec.alpha, spec.beta, n)


def _log_k(kind, alpha, beta, n):
    lg = math.lgamma
    if kind == LAGUERRE:
        return lg(n + alpha + 1) - lg(n + 1)
    if kind == HERMITE:
        return n * math.log(2.0) + lg(n + 1) + 0.5 * math.log(math.pi)
    s = alpha + beta
    if n == 0:
        # (s+1) Gamma(s+1) = Gamma(s+2) keeps s = -1 finite
        return (s + 1) * math.log(2.0) + lg(alpha + 1) + lg(beta + 1) - lg(s + 2)
    return (
        (s + 1) * math.log(2.0)
        + lg(n + alpha + 1)
        + lg(n + beta + 1)
        - math.log(2 * n + s + 1)
        - lg(n + s + 1)
        - lg(n + 1)
    )


def log_mu0(spec: FamilySpec) -> float:
    """``ln`` of the total mass of the weight."""
    return _log_k(spec.kind, spec.alpha, spec.beta, 0)


# --------------------------------------------------------------------------
# normalized weighted functions


def _normalized(spec: FamilySpec, n: int, t):
    """Unchecked ``q_n(t)``; returns ``(values, log_scale_used)``."""
    p, e = _scaled_recurrence(spec.kind, spec.alpha, spec.beta, n, t)
    log_k = _log_k(spec.kind, spec.alpha, spec.beta, n)
    lw = _log_weight(spec, t)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        safe = (
            (abs(log_k) <= _LOG_LIMIT)
            & (np.abs(lw) <= _LOG_LIMIT)
            & (e == 0)
            & (np.abs(p) < 1e300)
        )
        direct = math.exp(-log_k) * _weight(spec, t) * p
        logged = np.sign(p) * np.exp(-log_k + lw + np.log(np.abs(p)) + e * math.log(2.0))
    zero_weight = np.isneginf(lw)
    out = np.where(safe | zero_weight, direct, logged)
    out = np.where(zero_weight, 0.0, out)
    return out, bool(np.any(~safe & ~zero_weight))


def eval_normalized(spec: FamilySpec, n: int, t) -> NormalizedFunctionValue:
    """``q_n(t) = weight(t) Q_n(t) / k_n`` (the functions l_n, h_n, p_n).

    The prefactor comes from log-gamma values; whenever a factor's log
    magnitude exceeds 300 the product is formed in log space and
    ``log_scale_used`` is set.
    """
    n = check_degree(n)
    t, scalar = _as_points(t)
    _check_points(spec, t)
    values, used = _normalized(spec, n, t)
    return NormalizedFunctionValue(_finish(values, scalar), used)


def normalized(spec: FamilySpec, n: int, t):
    """Shorthand for ``eval_normalized(spec, n, t).value``."""
    return eval_normalized(spec, n, t).value


def weighted_polynomial(spec: FamilySpec, n: int, t):
    """``weight(t) * Q_n(t)`` without the ``1/k_n`` normalization."""
    n = check_degree(n)
    t, scalar = _as_points(t)
    _check_points(spec, t)
    p, e = _scaled_recurrence(spec.kind, spec.alpha, spec.beta, n, t)
    lw = _log_weight(spec, t)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        direct = _weight(spec, t) * p
        logged = np.sign(p) * np.exp(lw + np.log(np.abs(p)) + e * math.log(2.0))
    safe = (np.abs(lw) <= _LOG_LIMIT) & (e == 0)
    out = np.where(safe | np.isneginf(lw), direct, logged)
    return _finish(out, scalar)


# --------------------------------------------------------------------------
# identities


def _lag_fn(n, a, t):
    # n!/Gamma(n+a+1) t^a e^{-t} L_n^{(a)}(t); needs n + a + 1 > 0 only
    pref = math.exp(math.lgamma(n + 1) - math.lgamma(n + a + 1))
    return pref * _pow0(t, a) * np.exp(-t) * _poly(LAGUERRE, a, None, n, t)


def _herm_fn(n, t):
    pref = math.exp(-(n * math.log(2.0) + math.lgamma(n + 1) + 0.5 * math.log(math.pi)))
    return pref * np.exp(-t * t) * _poly(HERMITE, None, None, n, t)


def _jac_fn(n, a, b, t):
    return math.exp(-_log_k(JACOBI, a, b, n)) * _pow0(1.0 - t, a) * _pow0(1.0 + t, b) * _poly(JACOBI, a, b, n, t)


def _laguerre_terms(ident, a, n, t, k):
    P = lambda m, al: _poly(LAGUERRE, al, None, m, t)  # noqa: E731
    if ident == "laguerre_recurrence_down":
        _need(n >= 1, ident)
        return [n * P(n, a), -(n + a) * P(n - 1, a), t * P(n - 1, a + 1)]
    if ident == "laguerre_recurrence_up":
        _need(n >= 1, ident)
        return [t * P(n, a + 1), -(n + a) * P(n - 1, a), (n - t) * P(n, a)]
    if ident == "laguerre_shift_sum":
        return [P(n, a)] + [-((-1) ** j) * P(n - j, a + 1 + j) for j in range(n + 1)]
    if ident == "laguerre_function_step":
        _need(n >= 1, ident)
        return [_lag_fn(n, a, t), -_lag_fn(n - 1, a, t), _lag_fn(n - 1, a + 1, t)]
    if ident == "laguerre_ode":
        y1 = _poly_derivative(LAGUERRE, a, None, n, t, 1)
        y2 = _poly_derivative(LAGUERRE, a, None, n, t, 2)
        return [t * y2, (a + 1 - t) * y1, n * P(n, a)]
    if ident == "laguerre_function_derivative":
        # Leibniz on (t^a e^{-t}) * L_n^{(a)} with
        # d^m(t^a e^{-t}) = m! t^{a-m} e^{-t} L_m^{(a-m)}
        _need(k >= 1, ident)
        pref = math.exp(math.lgamma(n + 1) - math.lgamma(n + a + 1))
        lhs = []
        for j in range(k + 1):
            m = k - j
            dw = math.factorial(m) * _pow0(t, a - m) * np.exp(-t) * P(m, a - m)
            lhs.append(pref * math.comb(k, j) * dw * _poly_derivative(LAGUERRE, a, None, n, t, j))
        return lhs + [-_lag_fn(n + k, a - k, t)]
    raise UsageError(f"unknown identity {ident!r}")


def _hermite_terms(ident, n, t, k):
    H = lambda m: _poly(HERMITE, None, None, m, t)  # noqa: E731
    if ident == "hermite_recurrence":
        _need(n >= 1, ident)
        return [H(n + 1), -2.0 * t * H(n), 2.0 * n * H(n - 1)]
    if ident == "hermite_ode":
        y1 = _poly_derivative(HERMITE, None, None, n, t, 1)
        y2 = _poly_derivative(HERMITE, None, None, n, t, 2)
        return [y2, -2.0 * t * y1, 2.0 * n * H(n)]
    if ident == "hermite_function_derivative":
        # Leibniz with d^m e^{-t^2} = (-1)^m H_m e^{-t^2}
        _need(k >= 1, ident)
        pref = math.exp(-(n * math.log(2.0) + math.lgamma(n + 1) + 0.5 * math.log(math.pi)))
        g = np.exp(-t * t)
        lhs = [
            pref * math.comb(k, j) * (-1.0) ** (k - j) * H(k - j) * g * _poly_derivative(HERMITE, None, None, n, t, j)
            for j in range(k + 1)
        ]
        return lhs + [-((-1.0) ** k) * 2.0**k * _rising(n + 1, k) * _herm_fn(n + k, t)]
    if ident == "hermite_parity":
        return [_herm_fn(n, -t), -((-1.0) ** n) * _herm_fn(n, t)]
    raise UsageError(f"unknown identity {ident!r}")


def _jacobi_terms(ident, a, b, n, t, k):
    s = a + b
    P = lambda m, x, y: _poly(JACOBI, x, y, m, t)  # noqa: E731
    p = lambda m, x, y: _jac_fn(m, x, y, t)  # noqa: E731
    if ident == "jacobi_ode":
        y1 = _poly_derivative(JACOBI, a, b, n, t, 1)
        y2 = _poly_derivative(JACOBI, a, b, n, t, 2)
        return [(1 - t * t) * y2, (b - a - (s + 2) * t) * y1, n * (n + s + 1) * P(n, a, b)]
    if ident == "jacobi_symmetry":
        return [P(n, a, b), -((-1.0) ** n) * _poly(JACOBI, b, a, n, -t)]
    if ident == "jacobi_function_parity":
        return [_jac_fn(n, a, b, -t), -((-1.0) ** n) * _jac_fn(n, b, a, t)]
    if ident == "jacobi_function_derivative":
        # the right side is a Jacobi function only while both shifted
        # parameters stay above -1; below that it cannot be evaluated stably
        _need(k >= 1 and n >= 1 and a - k > -1 and b - k > -1, ident)
        return _jacobi_derivative_terms(a, b, n, t, k)
    _need(n >= 1, ident)
    c = 2 * n + s
    r = _shift_ratio(n, s)
    if ident == "jacobi_raise_three_term":
        return [
            p(n - 1, a + 1, b + 1),
            -r * (n + s + 1) / c * p(n - 1, a, b),
            -(n + s + 1) * (a - b) / (c * (c + 2)) * p(n, a, b),
            (n + a + 1) * (n + b + 1) / ((c + 2) * (c + 3)) * p(n + 1, a, b),
        ]
    if ident == "jacobi_function_recurrence":
        return [
            (n + a + 1) * (n + b + 1) / (c + 3) * p(n + 1, a, b),
            (c + 2) * n * r / c * p(n - 1, a, b),
            -((c + 2) * c * t + a * a - b * b) / (2 * c) * p(n, a, b),
        ]
    if ident == "jacobi_raise_with_t":
        return [
            p(n - 1, a + 1, b + 1),
            -r * (c + 1) / c * p(n - 1, a, b),
            -0.5 * ((a - b) / c - t) * p(n, a, b),
        ]
    raise UsageError(f"unknown identity {ident!r}")


def _shift_ratio(n, s):
    """(n+s)/(2n+s-1), equal to 1 at n = 1 even when s = -1 makes it 0/0."""
    if n == 1:
        return 1.0
    return (n + s) / (2 * n + s - 1)


def _jacobi_derivative_terms(a, b, n, t, k):
    s = a + b
    c_n = math.exp(-_log_k(JACOBI, a, b, n))
    terms = []
    for m in range(k + 1):
        # d^m of (1-t)^a (1+t)^b
        dw = sum(
            math.comb(m, j)
            * (-1.0) ** j
            * _falling(a, j)
            * _pow0(1.0 - t, a - j)
            * _falling(b, m - j)
            * _pow0(1.0 + t, b - m + j)
            for j in range(m + 1)
        )
        terms.append(c_n * math.comb(k, m) * dw * _poly_derivative(JACOBI, a, b, n, t, k - m))
    log_coef = (
        math.lgamma(n + s + 1)
        + math.lgamma(n + k + 1)
        - math.lgamma(n + a + 1)
        - math.lgamma(n + b + 1)
        + math.log(2 * n + s + 1)
        - (s + 1) * math.log(2.0)
        + k * math.log(2.0)
    )
    rhs = (-1.0) ** k * math.exp(log_coef) * _pow0(1.0 - t, a - k) * _pow0(1.0 + t, b - k)
    rhs = rhs * _poly(JACOBI, a - k, b - k, n + k, t)
    return terms + [-rhs]


def _need(ok, ident):
    if not ok:
        raise DomainError(f"identity {ident!r} is not defined for these arguments")


IDENTITIES = {
    LAGUERRE: (
        "laguerre_recurrence_down",
        "laguerre_recurrence_up",
        "laguerre_shift_sum",
        "laguerre_function_step",
        "laguerre_ode",
        "laguerre_function_derivative",
    ),
    HERMITE: ("hermite_recurrence", "hermite_ode", "hermite_function_derivative", "hermite_parity"),
    JACOBI: (
        "jacobi_ode",
        "jacobi_symmetry",
        "jacobi_function_parity",
        "jacobi_function_derivative",
        "jacobi_raise_three_term",
        "jacobi_function_recurrence",
        "jacobi_raise_with_t",
    ),
}


def identity_terms(identity_id: str, spec: FamilySpec, n: int, t, k: int = 1) -> list:
    """The signed terms whose sum is LHS - RHS of the named identity."""
    if identity_id not in IDENTITIES.get(spec.kind, ()):
        if any(identity_id in ids for ids in IDENTITIES.values()):
            raise UsageError(f"identity {identity_id!r} does not belong to the {spec.kind} family")
        raise UsageError(f"unknown identity {identity_id!r}")
    n = check_degree(n)
    t = np.asarray(t, dtype=float)
    if spec.kind == LAGUERRE:
        if np.any(t <= 0):
            raise DomainError("Laguerre identities are checked on t > 0")
        terms = _laguerre_terms(identity_id, spec.alpha, n, t, k)
    elif spec.kind == HERMITE:
        terms = _hermite_terms(identity_id, n, t, k)
    else:
        if np.any(np.abs(t) >= 1):
            raise DomainError("Jacobi identities are checked on -1 < t < 1")
        terms = _jacobi_terms(identity_id, spec.alpha, spec.beta, n, t, k)
    return [np.broadcast_to(np.asarray(x, dtype=float), t.shape) for x in terms]


def family_identity_residual(identity_id: str, spec: FamilySpec, n: int, t, k: int = 1, with_scale: bool = False):
    """LHS - RHS of a named identity at ``t``.

    Derivatives inside the identities come from the analytic derivative
    relations, never finite differences.  With ``with_scale=True`` the largest
    term magnitude is returned as well, which is the natural yardstick for
    the residual.  ``IDENTITIES`` lists the valid ids per family.
    """
    terms = identity_terms(identity_id, spec, n, t, k)
    stacked = np.stack(terms)
    residual = np.sum(stacked, axis=0)
    scalar = np.ndim(t) == 0
    residual = _finish(residual, scalar)
    if with_scale:
        return residual, _finish(np.max(np.abs(stacked), axis=0), scalar)
    return residual
