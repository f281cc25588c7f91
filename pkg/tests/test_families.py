import math
import zlib

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from ortho_l1 import families as fam
from ortho_l1.errors import CapabilityError, DomainError, UsageError
from ortho_l1.families import FamilySpec
from ortho_l1.zeros import compute_zeros

params = st.floats(min_value=-0.9, max_value=4.0, allow_nan=False)


def _spec(kind, a=0.0, b=0.0):
    if kind == "laguerre":
        return FamilySpec.laguerre(a)
    if kind == "hermite":
        return FamilySpec.hermite()
    return FamilySpec.jacobi(a, b)


# --------------------------------------------------------------------------
# FamilySpec


def test_spec_intervals_and_symmetry():
    assert FamilySpec.laguerre(0.5).interval == (0.0, math.inf)
    assert FamilySpec.hermite().interval == (-math.inf, math.inf)
    assert FamilySpec.jacobi(0.5, 0.5).interval == (-1.0, 1.0)
    assert FamilySpec.hermite().symmetric
    assert FamilySpec.jacobi(0.3, 0.3).symmetric
    assert not FamilySpec.jacobi(0.3, 0.4).symmetric
    assert not FamilySpec.laguerre(0.0).symmetric


@pytest.mark.parametrize(
    "build",
    [
        lambda: FamilySpec.laguerre(-1.0),
        lambda: FamilySpec.laguerre(float("nan")),
        lambda: FamilySpec.jacobi(0.0, -1.5),
        lambda: FamilySpec.jacobi(math.inf, 0.0),
        lambda: FamilySpec("hermite", 1.0),
        lambda: FamilySpec("laguerre", 1.0, 2.0),
        lambda: FamilySpec("chebyshev"),
    ],
)
def test_spec_rejects_bad_parameters(build):
    with pytest.raises(DomainError):
        build()


def test_make_is_case_insensitive():
    assert FamilySpec.make("Jacobi", 1, 2) == FamilySpec.jacobi(1.0, 2.0)
    assert FamilySpec.make("HERMITE", 3, 4) == FamilySpec.hermite()


def test_shifted_raises_parameters():
    assert FamilySpec.jacobi(0.5, -0.5).shifted(2) == FamilySpec.jacobi(2.5, 1.5)
    assert FamilySpec.laguerre(0.0).shifted(1) == FamilySpec.laguerre(1.0)
    assert FamilySpec.hermite().shifted(3) == FamilySpec.hermite()


# --------------------------------------------------------------------------
# polynomial values


@pytest.mark.parametrize(
    "spec, n, t, expected",
    [
        (FamilySpec.laguerre(0.0), 1, 0.0, 1.0),
        (FamilySpec.hermite(), 2, 1.0, 2.0),
        (FamilySpec.jacobi(1.0, 0.0), 1, 0.0, 0.5),
        (FamilySpec.laguerre(2.0), 2, 0.0, 6.0),
    ],
)
def test_polynomial_examples(spec, n, t, expected):
    assert fam.eval_polynomial(spec, n, t) == expected


@pytest.mark.parametrize("t", [-2.0, -0.5, 0.0, 0.25, 1.0, 3.0])
@pytest.mark.parametrize("a, b", [(0.0, 0.0), (1.0, 2.0), (3.0, -0.5), (0.5, 0.25)])
def test_low_degree_polynomials_are_exact(t, a, b):
    lag, jac = FamilySpec.laguerre(a), FamilySpec.jacobi(a, b)
    her = FamilySpec.hermite()
    for spec in (lag, her, jac):
        assert fam.eval_polynomial(spec, 0, t) == 1.0
    assert fam.eval_polynomial(lag, 1, t) == -t + a + 1
    assert fam.eval_polynomial(her, 1, t) == 2 * t
    assert fam.eval_polynomial(jac, 1, t) == 0.5 * (a + b + 2) * t + 0.5 * (a - b)


@given(kind=st.sampled_from(["laguerre", "hermite", "jacobi"]), a=params, b=params,
       n=st.integers(0, 5), t=st.floats(-1.0, 1.0))
def test_recurrence_matches_explicit_sums(kind, a, b, n, t):
    spec = _spec(kind, a, b)
    if kind == "laguerre":
        t = 3.0 * (t + 1.0)
    rec = fam.eval_polynomial(spec, n, t)
    exp = fam.explicit_polynomial(spec, n, t)
    assert abs(rec - exp) <= 1e-12 * max(1.0, abs(exp), abs(rec))


@pytest.mark.parametrize("n", [3, 10, 25, 40])
def test_recurrence_matches_scipy(n):
    rng = np.random.default_rng(n)
    for _ in range(5):
        a, b = rng.uniform(-0.9, 4.0, 2)
        t = rng.uniform(-1, 1, 32)
        got = fam.eval_polynomial(FamilySpec.jacobi(a, b), n, t)
        np.testing.assert_allclose(got, special.eval_jacobi(n, a, b, t), rtol=1e-10, atol=1e-12 * np.max(np.abs(got)))
        tl = rng.uniform(0, 4 * n, 32)
        got = fam.eval_polynomial(FamilySpec.laguerre(a), n, tl)
        ref = special.eval_genlaguerre(n, a, tl)
        np.testing.assert_allclose(got, ref, rtol=1e-9, atol=1e-12 * np.max(np.abs(ref)))
    th = np.linspace(-6, 6, 41)
    ref = special.eval_hermite(n, th)
    np.testing.assert_allclose(fam.eval_polynomial(FamilySpec.hermite(), n, th), ref, rtol=1e-12,
                               atol=1e-13 * np.max(np.abs(ref)))


def test_derivative_identities_match_scipy():
    t = np.linspace(-0.9, 0.9, 7)
    spec = FamilySpec.jacobi(0.5, 1.5)
    d1 = fam.eval_polynomial_derivative(spec, 6, t, 1)
    h = 1e-6
    fd = (special.eval_jacobi(6, 0.5, 1.5, t + h) - special.eval_jacobi(6, 0.5, 1.5, t - h)) / (2 * h)
    np.testing.assert_allclose(d1, fd, rtol=1e-6)
    assert fam.eval_polynomial_derivative(spec, 2, 0.3, 3) == 0.0


def test_recurrence_rescaling_keeps_large_values():
    # L_120^(0)(1000) is about 1e161 and H_120(30) about 1e249
    lag = fam.eval_polynomial(FamilySpec.laguerre(0.0), 120, 1000.0)
    assert math.isfinite(lag)
    assert lag == pytest.approx(special.eval_genlaguerre(120, 0.0, 1000.0), rel=1e-11)
    her = fam.eval_polynomial(FamilySpec.hermite(), 120, 30.0)
    assert her == pytest.approx(special.eval_hermite(120, 30.0), rel=1e-12)


# --------------------------------------------------------------------------
# normalization constants and normalized functions


def test_log_norm_constant_examples():
    assert fam.log_norm_constant(FamilySpec.laguerre(0.0), 2) == pytest.approx(0.0, abs=1e-15)
    assert fam.log_norm_constant(FamilySpec.hermite(), 0) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-15)
    assert fam.log_norm_constant(FamilySpec.jacobi(0.0, 0.0), 0) == pytest.approx(math.log(2.0), rel=1e-15)


@given(a=params, b=params, n=st.integers(0, 12))
def test_norm_constant_against_direct_formulas(a, b, n):
    k_lag = math.gamma(n + a + 1) / math.factorial(n)
    assert math.exp(fam.log_norm_constant(FamilySpec.laguerre(a), n)) == pytest.approx(k_lag, rel=1e-13)
    k_her = 2**n * math.factorial(n) * math.sqrt(math.pi)
    assert math.exp(fam.log_norm_constant(FamilySpec.hermite(), n)) == pytest.approx(k_her, rel=1e-13)
    s = a + b
    k_jac = 2 ** (s + 1) * math.gamma(n + a + 1) * math.gamma(n + b + 1) / (
        (2 * n + s + 1) * math.gamma(n + s + 1) * math.factorial(n)
    ) if n > 0 else 2 ** (s + 1) * math.gamma(a + 1) * math.gamma(b + 1) / math.gamma(s + 2)
    assert math.exp(fam.log_norm_constant(FamilySpec.jacobi(a, b), n)) == pytest.approx(k_jac, rel=1e-12)


def test_jacobi_n0_constant_at_parameter_sum_minus_one():
    # s = -1 makes the generic formula 0/0 at n = 0
    assert math.exp(fam.log_norm_constant(FamilySpec.jacobi(-0.5, -0.5), 0)) == pytest.approx(math.pi, rel=1e-14)


@pytest.mark.parametrize(
    "spec, n, t, expected",
    [
        (FamilySpec.laguerre(0.0), 2, 0.0, 1.0),
        (FamilySpec.hermite(), 1, 1.0, math.exp(-1) / math.sqrt(math.pi)),
        (FamilySpec.jacobi(0.0, 0.0), 2, 0.0, -1.25),
    ],
)
def test_normalized_examples(spec, n, t, expected):
    got = fam.eval_normalized(spec, n, t)
    assert got.value == pytest.approx(expected, rel=1e-14)
    assert not got.log_scale_used


@given(kind=st.sampled_from(["laguerre", "hermite", "jacobi"]), a=params, b=params,
       n=st.integers(0, 30), u=st.floats(0.01, 0.99))
def test_normalized_consistent_with_weight_times_polynomial(kind, a, b, n, u):
    spec = _spec(kind, a, b)
    t = {"laguerre": 40 * u, "hermite": 12 * (u - 0.5), "jacobi": 2 * u - 1}[kind]
    got = fam.eval_normalized(spec, n, t)
    if got.log_scale_used:
        return
    direct = fam.weight(spec, t) * fam.eval_polynomial(spec, n, t) / math.exp(fam.log_norm_constant(spec, n))
    assert abs(got.value - direct) <= 1e-12 * abs(direct) + 1e-300


def test_log_space_path_for_extreme_arguments():
    spec = FamilySpec.laguerre(0.5)
    t = 700.0
    got = fam.eval_normalized(spec, 120, t)
    assert got.log_scale_used
    # reference in log space from scipy's polynomial value
    ref_log = (-fam.log_norm_constant(spec, 120) + 0.5 * math.log(t) - t
               + math.log(abs(special.eval_genlaguerre(120, 0.5, t))))
    assert math.log(abs(got.value)) == pytest.approx(ref_log, rel=1e-12)
    assert np.sign(got.value) == np.sign(special.eval_genlaguerre(120, 0.5, t))
    her = fam.eval_normalized(FamilySpec.hermite(), 120, 20.0)
    assert her.log_scale_used and math.isfinite(her.value) and her.value != 0.0


def test_vector_input_keeps_shape():
    t = np.linspace(0.1, 5, 12).reshape(3, 4)
    got = fam.eval_normalized(FamilySpec.laguerre(1.0), 4, t)
    assert got.value.shape == (3, 4)
    assert isinstance(fam.eval_normalized(FamilySpec.laguerre(1.0), 4, 0.5).value, float)


def test_weight_endpoint_convention():
    assert fam.weight(FamilySpec.laguerre(0.5), 0.0) == 0.0
    assert fam.weight(FamilySpec.laguerre(0.0), 0.0) == 1.0
    with pytest.raises(DomainError):
        fam.weight(FamilySpec.laguerre(-0.5), 0.0)
    assert fam.weight(FamilySpec.jacobi(0.0, 1.0), 1.0) == 2.0
    with pytest.raises(DomainError):
        fam.eval_normalized(FamilySpec.jacobi(-0.5, 0.0), 2, 1.0)
    with pytest.raises(DomainError):
        fam.eval_normalized(FamilySpec.jacobi(0.0, -0.5), 2, -1.0)
    assert fam.eval_normalized(FamilySpec.jacobi(0.0, 0.5), 2, 1.0).value != 0.0


@pytest.mark.parametrize("spec, t", [(FamilySpec.laguerre(0.0), -1.0), (FamilySpec.jacobi(0.0, 0.0), 1.5),
                                     (FamilySpec.hermite(), math.inf)])
def test_points_outside_interval_rejected(spec, t):
    with pytest.raises(DomainError):
        fam.eval_normalized(spec, 2, t)


def test_degree_cap_and_validation():
    with pytest.raises(CapabilityError):
        fam.eval_polynomial(FamilySpec.hermite(), fam.N_MAX + 1, 0.0)
    with pytest.raises(DomainError):
        fam.eval_normalized(FamilySpec.hermite(), -1, 0.0)
    with pytest.raises(DomainError):
        fam.eval_normalized(FamilySpec.hermite(), 2.5, 0.0)
    assert math.isfinite(fam.eval_normalized(FamilySpec.hermite(), fam.N_MAX, 0.5).value)


def test_weighted_polynomial_drops_normalization():
    spec = FamilySpec.jacobi(1.0, 0.5)
    t = np.linspace(-0.9, 0.9, 9)
    k = math.exp(fam.log_norm_constant(spec, 5))
    np.testing.assert_allclose(fam.weighted_polynomial(spec, 5, t), k * fam.normalized(spec, 5, t), rtol=1e-13)


# --------------------------------------------------------------------------
# identities


def _points(kind, n, rng, count=64):
    if kind == "laguerre":
        return rng.uniform(1e-3, 4 * n + 12, count)
    if kind == "hermite":
        r = math.sqrt(2 * n + 1) + 2
        return rng.uniform(-r, r, count)
    return rng.uniform(-0.999, 0.999, count)


def _tolerance(ident):
    if ident.endswith("_ode"):
        return 1e-9
    return 1e-12


IDENTITY_CASES = [(kind, ident) for kind, ids in fam.IDENTITIES.items() for ident in ids]


@pytest.mark.parametrize("kind, ident", IDENTITY_CASES)
def test_identity_residuals_at_random_points(kind, ident):
    rng = np.random.default_rng(zlib.crc32(ident.encode()))
    for _ in range(6):
        k = int(rng.integers(1, 4))
        lo = k - 0.9 if ident == "jacobi_function_derivative" else -0.9
        a, b = rng.uniform(lo, lo + 4.9, 2)
        n = int(rng.integers(1, 31))
        t = _points(kind, n, rng)
        res, scale = fam.family_identity_residual(ident, _spec(kind, a, b), n, t, k=k, with_scale=True)
        assert np.all(np.abs(res) <= _tolerance(ident) * (1 + scale)), (ident, a, b, n, k)


def test_identity_examples():
    assert abs(fam.family_identity_residual("laguerre_function_step", FamilySpec.laguerre(0.0), 3, 1.7)) <= 1e-13
    assert abs(fam.family_identity_residual("hermite_function_derivative", FamilySpec.hermite(), 2, 0.3, k=1)) <= 1e-13
    assert abs(fam.family_identity_residual("jacobi_raise_with_t", FamilySpec.jacobi(0.5, -0.25), 4, -0.4)) <= 1e-12


def test_parity_relations():
    t = np.linspace(0.05, 4, 30)
    for n in range(0, 12):
        h = FamilySpec.hermite()
        np.testing.assert_array_equal(fam.normalized(h, n, -t), (-1) ** n * fam.normalized(h, n, t))
    a, b = 0.7, -0.3
    ts = np.linspace(-0.95, 0.95, 31)
    for n in range(0, 12):
        lhs = fam.normalized(FamilySpec.jacobi(a, b), n, -ts)
        rhs = (-1) ** n * fam.normalized(FamilySpec.jacobi(b, a), n, ts)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-14)


def test_unknown_identity_is_usage_error():
    with pytest.raises(UsageError):
        fam.family_identity_residual("no_such_identity", FamilySpec.hermite(), 2, 0.1)
    with pytest.raises(UsageError):
        fam.family_identity_residual("jacobi_ode", FamilySpec.hermite(), 2, 0.1)


def test_identity_outside_its_domain():
    with pytest.raises(DomainError):
        fam.family_identity_residual("jacobi_function_derivative", FamilySpec.jacobi(0.5, 0.5), 3, 0.1, k=2)
    with pytest.raises(DomainError):
        fam.family_identity_residual("laguerre_ode", FamilySpec.laguerre(0.0), 3, -1.0)


@pytest.mark.parametrize("kind", ["laguerre", "hermite", "jacobi"])
def test_orthogonality_under_gauss_rule(kind):
    rng = np.random.default_rng(11)
    a, b = rng.uniform(-0.9, 4, 2)
    spec = _spec(kind, a, b)
    zs = compute_zeros(spec, 32)
    for n in range(16):
        for m in range(n, 16):
            val = math.fsum(zs.christoffel * fam.eval_polynomial(spec, n, zs.zeros) * fam.eval_polynomial(spec, m, zs.zeros))
            k_max = max(math.exp(fam.log_norm_constant(spec, j)) for j in (n, m))
            target = math.exp(fam.log_norm_constant(spec, n)) if n == m else 0.0
            assert abs(val - target) <= 1e-10 * k_max
