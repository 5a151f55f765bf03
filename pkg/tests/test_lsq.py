import math

import numpy as np
import pytest

from fraclsq import (
    ConditioningError,
    DataSet,
    DomainError,
    UsageError,
    WeightSpec,
    add_noise,
    build_continuous,
    build_discrete,
    common_step,
    expand_to_monomial,
    fit_continuous_normal,
    fit_discrete_normal,
    fit_projection,
    frac_poly_eval,
    predict,
    substituted_rule,
)
from fraclsq.functions import lookup


# ---------------------------------------------------------------------------
# continuous normal equations
# ---------------------------------------------------------------------------

def _t1_rule(lam, m=64):
    fn = lookup("x075+x15")
    return substituted_rule(m, common_step(fn.exponents + (lam, 2 * lam)))


def test_continuous_exact_representation():
    fn = lookup("x075+x15")
    fit = fit_continuous_normal(fn, 0.0, 1.0, 0.75, 2, rule=_t1_rule(0.75))
    assert fit.coeffs == pytest.approx([0.0, 1.0, 1.0], abs=1e-10)
    assert fit.error <= 1e-20


def test_continuous_reference_rows():
    fn = lookup("x075+x15")
    fit = fit_continuous_normal(fn, 0.0, 1.0, 1.0, 2, rule=_t1_rule(1.0))
    assert fit.coeffs == pytest.approx([0.0329, 1.7039, 0.2597], abs=5e-5)
    assert fit.error == pytest.approx(1.40e-5, rel=0.05)
    fit = fit_continuous_normal(fn, 0.0, 1.0, 1.5, 2, rule=_t1_rule(1.5))
    assert fit.coeffs == pytest.approx([0.1388, 2.5269, -0.7126], abs=5e-5)
    assert fit.error == pytest.approx(8.78e-4, rel=0.05)


def test_continuous_default_rule_close_enough():
    # without the common-step hint the default substitution still converges
    fn = lookup("x075+x15")
    fit = fit_continuous_normal(fn, 0.0, 1.0, 1.0, 2)
    assert fit.error == pytest.approx(1.40e-5, rel=0.05)


def test_continuous_domain_checks():
    fn = lookup("x15")
    with pytest.raises(DomainError):
        fit_continuous_normal(fn, 0.0, 1.0, 1.0, 20)
    with pytest.raises(DomainError):
        fit_continuous_normal(fn, 1.0, 0.0, 1.0, 2)
    with pytest.raises(DomainError):
        fit_continuous_normal(fn, 0.0, 1.0, 2.5, 2)


# ---------------------------------------------------------------------------
# discrete normal equations
# ---------------------------------------------------------------------------

def test_discrete_exact_representation_large_interval():
    xs = np.sort(np.random.default_rng(89).uniform(10.0, 20.0, 20))
    data = DataSet(xs, xs**1.5)
    fit = fit_discrete_normal(data, 1.5, 1)
    assert fit.coeffs == pytest.approx([0.0, 1.0], abs=1e-8)
    assert fit.error <= 1e-18


def test_discrete_any_data_point_hits_exact_fit():
    xs = np.array([1.0, 2.0, 3.0])
    data = DataSet(xs, 2.0 + 3.0 * xs)
    fit = fit_discrete_normal(data, 1.0, 1)
    assert fit.error <= 1e-20
    for x, y in zip(xs, data.ys):
        assert predict(fit, x) == pytest.approx(y, rel=1e-13)


def test_sales_prediction_line():
    data = DataSet([1.0, 2.0, 3.0, 4.0], [10000.0, 21000.0, 50000.0, 70000.0])
    fit = fit_discrete_normal(data, 1.0, 1)
    assert predict(fit, 5.0) == pytest.approx(90000.0, abs=1e-6)


def test_discrete_rank_deficiency():
    with pytest.raises(ConditioningError):
        fit_discrete_normal(DataSet([1.0, 2.0], [1.0, 2.0]), 1.0, 2)


def test_weighted_discrete_fit_prefers_weighted_region():
    rng = np.random.default_rng(5)
    xs = np.linspace(0.0, 1.0, 30)
    ys = xs**0.75
    noisy = ys.copy()
    tail = xs > 0.8
    noisy[tail] += 0.3 * rng.standard_normal(tail.sum())
    flat = fit_discrete_normal(DataSet(xs, noisy), 0.75, 1)
    down = fit_discrete_normal(DataSet(xs, noisy, weights=np.where(tail, 1e-3, 1.0)),
                               0.75, 1)
    clean_sse = lambda f: float(np.sum((predict(f, xs[~tail]) - ys[~tail]) ** 2))
    assert clean_sse(down) < clean_sse(flat)


# ---------------------------------------------------------------------------
# projection route
# ---------------------------------------------------------------------------

def test_projection_singular_weight_exact():
    basis = build_continuous(WeightSpec.jacobi(0.0, -0.5), 0.5, 1)
    fit = fit_projection(lookup("sqrt-shift"), basis)
    assert fit.coeffs == pytest.approx([0.0, 1.0], abs=1e-9)
    assert fit.cond == 1.0
    assert fit.error <= 1e-18


def test_projection_of_basis_member_is_unit_vector():
    from fraclsq import muntz_legendre_coeffs

    lam = 0.75
    basis = build_continuous(WeightSpec.unit(), lam, 2)
    target = muntz_legendre_coeffs(2, lam)
    fit = fit_projection(lambda x: np.array(
        [frac_poly_eval(target, t) for t in np.atleast_1d(x)]), basis)
    monomial = expand_to_monomial(fit)
    assert monomial.coeffs == pytest.approx(target.coeffs, abs=1e-9)


def test_projection_equals_normal_equations_on_data():
    rng = np.random.default_rng(11)
    xs = np.sort(rng.uniform(0.0, 1.0, 12))
    data = DataSet(xs, rng.standard_normal(12))
    for lam in (0.5, 1.0, 1.3):
        n = 3
        nfit = fit_discrete_normal(data, lam, n)
        pfit = fit_projection(data, build_discrete(None, xs, lam, n))
        a = expand_to_monomial(nfit).coeffs
        b = expand_to_monomial(pfit).coeffs
        assert np.array(a) == pytest.approx(np.array(b), abs=1e-8)
        assert predict(nfit, xs) == pytest.approx(predict(pfit, xs), abs=1e-8)


def test_projection_residual_orthogonality():
    rng = np.random.default_rng(12)
    xs = np.sort(rng.uniform(0.0, 1.0, 15))
    data = DataSet(xs, np.exp(xs))
    basis = build_discrete(None, xs, 0.75, 4)
    fit = fit_projection(data, basis)
    resid = data.ys - predict(fit, xs)
    norm = math.sqrt(float(np.sum(data.ys**2)))
    for lvals in basis.ladder_values(xs):
        assert abs(float(np.sum(resid * lvals))) <= 1e-9 * norm


def test_projection_requires_matching_points():
    basis = build_discrete(None, [0.0, 0.5, 1.0], 1.0, 1)
    with pytest.raises(UsageError):
        fit_projection(DataSet([0.0, 0.4, 1.0], [1.0, 2.0, 3.0]), basis)


# ---------------------------------------------------------------------------
# reduction, monotonicity, conditioning
# ---------------------------------------------------------------------------

def test_lambda_one_reduction_exact_entrywise():
    # the fractional normal matrix at lam = 1 must equal the classical
    # integer-power one entry for entry, bit for bit
    xs = np.sort(np.random.default_rng(2).uniform(0.0, 2.0, 9))
    n = 3
    idx = np.arange(n + 1)
    exps = 1.0 * (idx[:, None] + idx[None, :])
    A_frac = np.array([[np.sum(xs ** exps[i, j]) for j in idx] for i in idx])
    A_classical = np.array([[np.sum(xs ** int(i + j)) for j in idx] for i in idx])
    assert np.array_equal(A_frac, A_classical)

    data = DataSet(xs, np.cos(xs))
    frac_fit = fit_discrete_normal(data, 1.0, n)
    V = np.vander(xs, n + 1, increasing=True)
    classical = np.linalg.lstsq(V, data.ys, rcond=None)[0]
    assert frac_fit.coeffs == pytest.approx(classical, abs=1e-10)


def test_error_monotone_in_degree():
    xs = np.linspace(0.0, 1.0, 20)
    data = DataSet(xs, np.sin(3 * xs))
    errs = [fit_discrete_normal(data, 0.75, n).error for n in range(6)]
    for lo, hi in zip(errs[1:], errs[:-1]):
        assert lo <= hi + 1e-12


def test_conditioning_growth_vs_projection_stability():
    # equispaced data, lam = 0.5: the normal-matrix condition number grows
    # at least tenfold per added degree while the projection route stays at
    # the optimal residual
    xs = np.linspace(0.0, 1.0, 25)
    data = DataSet(xs, np.sin(xs))
    conds = {n: fit_discrete_normal(data, 0.5, n).cond for n in range(4, 10)}
    for n in range(4, 9):
        assert conds[n + 1] >= 10.0 * conds[n]
    for n in (6, 8, 9):
        V = xs[:, None] ** (0.5 * np.arange(n + 1))
        c = np.linalg.lstsq(V, data.ys, rcond=None)[0]
        optimal = float(np.sum((data.ys - V @ c) ** 2))
        proj = fit_projection(data, build_discrete(None, xs, 0.5, n)).error
        assert abs(proj - optimal) <= 1e-8


# ---------------------------------------------------------------------------
# prediction and noise
# ---------------------------------------------------------------------------

def test_predict_extrapolates_and_guards_domain():
    data = DataSet([0.0, 1.0, 2.0], [0.0, 1.0, 4.0])
    fit = fit_discrete_normal(data, 1.0, 2)
    assert predict(fit, 10.0) == pytest.approx(100.0, rel=1e-9)
    with pytest.raises(DomainError):
        predict(fit, -1.0)


def test_add_noise_identity_and_determinism():
    data = DataSet([1.0, 2.0, 3.0], [1.0, -2.0, 3.0])
    assert add_noise(data, 0.0, 42) is data
    a = add_noise(data, 5.0, 42)
    b = add_noise(data, 5.0, 42)
    assert np.array_equal(a.ys, b.ys)
    assert not np.array_equal(a.ys, add_noise(data, 5.0, 43).ys)


def test_add_noise_scales_with_percent():
    rng_data = DataSet(np.linspace(10, 20, 200), np.linspace(10, 20, 200) ** 1.5)
    d5 = add_noise(rng_data, 5.0, 7)
    d10 = add_noise(rng_data, 10.0, 7)
    r5 = float(np.sum((d5.ys - rng_data.ys) ** 2))
    r10 = float(np.sum((d10.ys - rng_data.ys) ** 2))
    assert r10 == pytest.approx(4.0 * r5, rel=1e-12)
    fit5 = fit_discrete_normal(d5, 1.5, 1)
    fit10 = fit_discrete_normal(d10, 1.5, 1)
    assert fit5.error < fit10.error


def test_dataset_validation():
    with pytest.raises(DomainError):
        DataSet([-1.0, 1.0], [0.0, 1.0])
    with pytest.raises(DomainError):
        DataSet([1.0], [1.0, 2.0])
    with pytest.raises(DomainError):
        DataSet([1.0, 2.0], [0.0, 1.0], weights=[1.0, 0.0])
