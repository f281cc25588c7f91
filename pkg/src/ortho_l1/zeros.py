"""Zeros of Q_n, Christoffel numbers and the origin-split index.

Zeros come from the Golub-Welsch construction: eigenvalues of the symmetric
Jacobi matrix of the monic recurrence, followed by one Newton step on the
recurrence-evaluated polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import families as fam
from .errors import DomainError, UsageError
from .families import FamilySpec
from .tridiag import tridiagonal_eigen

# computed zeros closer than this to the origin are pinned to 0.0
ZERO_SNAP = 1e-13


@dataclass(frozen=True)
class ZeroSet:
    """Sorted zeros ``t_1 < ... < t_n`` of ``Q_n`` with matching Christoffel numbers.

    ``n0`` is the origin-split index: with sentinels ``t_0 = a`` and
    ``t_{n+1} = b``, ``0`` lies in ``[t_{n0}, t_{n0+1})``.  A zero that is
    exactly 0 is therefore ``t_{n0}``.
    """

    family: FamilySpec
    n: int
    zeros: np.ndarray
    n0: int
    christoffel: np.ndarray

    def __len__(self):
        return self.n


def recurrence_coefficients(spec: FamilySpec, n: int):
    """Monic recurrence coefficients: diagonal ``a_0..a_{n-1}``, squared off-diagonal ``b_1..b_{n-1}``."""
    k = np.arange(n, dtype=float)
    kk = np.arange(1, n, dtype=float)
    if spec.kind == fam.LAGUERRE:
        a = 2 * k + spec.alpha + 1
        b = kk * (kk + spec.alpha)
    elif spec.kind == fam.HERMITE:
        a = np.zeros(n)
        b = kk / 2
    else:
        al, be = spec.alpha, spec.beta
        s = al + be
        a = np.empty(n)
        if n:
            # k = 0 written in cancelled form; the general one is 0/0 at s = 0
            a[0] = (be - al) / (s + 2)
        ks = k[1:]
        a[1:] = (be * be - al * al) / ((2 * ks + s) * (2 * ks + s + 2))
        c = 2 * kk + s
        with np.errstate(divide="ignore", invalid="ignore"):
            b = 4 * kk * (kk + al) * (kk + be) * (kk + s) / (c * c * (c + 1) * (c - 1))
        if n > 1:
            # k = 1 has (1+s)/(1+s) cancelled
            b[0] = 4 * (1 + al) * (1 + be) / ((2 + s) ** 2 * (3 + s))
    return a, b


@lru_cache(maxsize=2048)
def _zeros_cached(spec: FamilySpec, n: int):
    a, b = recurrence_coefficients(spec, n)
    nodes, first = tridiagonal_eigen(a, np.sqrt(b))
    order = np.argsort(nodes)
    t = np.asarray(nodes)[order]
    w = math.exp(fam.log_mu0(spec)) * np.asarray(first)[order] ** 2

    t = polish(spec, n, t)
    if spec.symmetric:
        t = 0.5 * (t - t[::-1])
        w = 0.5 * (w + w[::-1])
        if n % 2:
            t[n // 2] = 0.0
    t[np.abs(t) <= ZERO_SNAP] = 0.0
    lo, hi = spec.interval
    t = np.clip(t, np.nextafter(lo, 0.0), np.nextafter(hi, 0.0))
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def polish(spec: FamilySpec, n: int, t):
    """One Newton step ``t - Q_n(t)/Q_n'(t)`` on each approximate zero."""
    t = np.asarray(t, dtype=float)
    q = fam._poly(spec.kind, spec.alpha, spec.beta, n, t)
    dq = fam._poly_derivative(spec.kind, spec.alpha, spec.beta, n, t, 1)
    return t - q / dq


def compute_zeros(spec: FamilySpec, n: int) -> ZeroSet:
    """Zeros, Christoffel numbers and origin split for ``Q_n`` (1 <= n <= N_MAX)."""
    n = fam.check_degree(n)
    if n < 1:
        raise DomainError("Q_0 has no zeros")
    t, w = _zeros_cached(spec, n)
    return ZeroSet(spec, n, t, _split_index(t), w)


def _split_index(zeros) -> int:
    return int(np.count_nonzero(zeros < 0) + np.count_nonzero(zeros == 0))


def origin_split(zs: ZeroSet) -> int:
    """Index ``n0`` with ``0`` in ``[t_{n0}, t_{n0+1})`` (1-based, sentinel endpoints)."""
    return _split_index(zs.zeros)


# --------------------------------------------------------------------------
# Gauss rule self-check


def weighted_moments(spec: FamilySpec, degree: int) -> np.ndarray:
    """``m_k = integral of t^k weight(t)`` for ``k = 0..degree``."""
    m = np.zeros(degree + 1)
    if spec.kind == fam.LAGUERRE:
        for k in range(degree + 1):
            m[k] = math.exp(math.lgamma(k + spec.alpha + 1))
        return m
    if spec.kind == fam.HERMITE:
        for k in range(0, degree + 1, 2):
            m[k] = math.gamma((k + 1) / 2) if k < 340 else math.exp(math.lgamma((k + 1) / 2))
        return m
    # integrating d/dt[t^k (1-t)^(a+1) (1+t)^(b+1)] over (-1, 1) gives
    # (k+s+2) m_{k+1} = k m_{k-1} + (b-a) m_k
    al, be = spec.alpha, spec.beta
    s = al + be
    m[0] = math.exp(fam.log_mu0(spec))
    for k in range(degree):
        prev = m[k - 1] if k else 0.0
        m[k + 1] = (k * prev + (be - al) * m[k]) / (k + s + 2)
    return m


def gauss_rule_check(spec: FamilySpec, n: int, coeffs):
    """Apply the n-point Gauss rule to a polynomial and compare with its exact integral.

    ``coeffs`` are monomial coefficients in increasing degree.  Returns
    ``(rule_value, exact_value)``.
    """
    coeffs = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    degree = len(coeffs) - 1
    if degree > 2 * n - 1:
        raise UsageError(f"an {n}-point Gauss rule is exact only up to degree {2 * n - 1}, got {degree}")
    zs = compute_zeros(spec, n)
    if degree < 0:
        return 0.0, 0.0
    values = np.polynomial.polynomial.polyval(zs.zeros, coeffs)
    rule = math.fsum(zs.christoffel * values)
    exact = math.fsum(coeffs * weighted_moments(spec, degree))
    return rule, exact
