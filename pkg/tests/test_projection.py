import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from vineprior.dispersion import DispersionSpec
from vineprior.errors import DomainError, SolverError
from vineprior.families import get_family
from vineprior.projection import (
    TRUNCATION_THRESHOLD,
    DesignMatrix,
    induce_prior,
    kl_normal,
    truncation_divergence,
)

from conftest import random_spd


def make_spec(mean0=0.3):
    return DispersionSpec(dof=14.3, rate=118.0, mean0=mean0, draws=10, mean_scale=0.002)


def test_design_matrix_validation():
    with pytest.raises(DomainError, match="rank"):
        DesignMatrix(matrix=np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]]))
    with pytest.raises(DomainError):
        DesignMatrix(matrix=np.ones((2, 3)))  # more columns than scenarios
    with pytest.raises(DomainError):
        DesignMatrix(matrix=np.array([[1.0, np.nan]]))
    d = DesignMatrix(matrix=np.eye(3))
    assert d.shape == (3, 3)
    assert d.names == ("b0", "b1", "b2")
    assert_allclose(d.offset, np.zeros(3))
    named = DesignMatrix(matrix=np.eye(2), names=("a", "b"), offset=np.array([0.1, 0.2]))
    assert named.names == ("a", "b")
    with pytest.raises(DomainError):
        DesignMatrix(matrix=np.eye(2), names=("a",))


def test_identity_design_reproduces_saturated_model():
    rng = np.random.default_rng(31)
    n = 4
    loc = rng.standard_normal(n)
    V = random_spd(rng, n)
    spec = make_spec()
    prior = induce_prior(loc, V, spec, get_family("simplex"))
    assert_allclose(prior.coef_loc, loc, rtol=0, atol=1e-12)
    assert_allclose(prior.coef_scale, V, rtol=1e-12)
    assert_allclose(prior.projector, np.eye(n), rtol=0, atol=1e-12)
    assert prior.dof == spec.dof
    assert prior.rate == spec.rate  # same family keeps the dispersion ratio at 1
    assert prior.dispersion_ratio == 1.0
    assert prior.family == "simplex"


def test_projector_idempotent_and_normal_equations():
    rng = np.random.default_rng(32)
    n, p = 7, 3
    loc = rng.standard_normal(n)
    V = random_spd(rng, n)
    X = rng.standard_normal((n, p))
    design = DesignMatrix(matrix=X)
    spec = make_spec()
    prior = induce_prior(loc, V, spec, get_family("simplex"), design=design)
    A = prior.projector
    assert_allclose(A @ A, A, rtol=0, atol=1e-10)
    assert_allclose(A @ X, X, rtol=0, atol=1e-10)
    # normal equations of the V^-1 weighted regression
    resid = loc - X @ prior.coef_loc
    assert_allclose(X.T @ np.linalg.solve(V, resid), 0.0, rtol=0, atol=1e-10)
    # coefficient covariance is the weighted Gram inverse (ratio 1 here)
    assert_allclose(prior.coef_scale, np.linalg.inv(X.T @ np.linalg.solve(V, X)), rtol=1e-9)


def test_offset_is_subtracted_before_projection():
    rng = np.random.default_rng(33)
    n, p = 5, 2
    loc = rng.standard_normal(n)
    V = random_spd(rng, n)
    X = rng.standard_normal((n, p))
    off = rng.standard_normal(n)
    spec = make_spec()
    with_off = induce_prior(
        loc, V, spec, get_family("simplex"), design=DesignMatrix(matrix=X, offset=off)
    )
    without = induce_prior(
        loc - off, V, spec, get_family("simplex"), design=DesignMatrix(matrix=X)
    )
    assert_allclose(with_off.coef_loc, without.coef_loc, rtol=1e-12)
    assert_allclose(with_off.coef_scale, without.coef_scale, rtol=1e-12)


def test_known_dispersion_ratio():
    rng = np.random.default_rng(34)
    n = 3
    loc = rng.standard_normal(n)
    V = random_spd(rng, n)
    spec = DispersionSpec.known(2.0)
    prior = induce_prior(loc, V, spec, get_family("gamma"), target_phi=0.5)
    # q = phi_target / phi_elicited = 0.25; Sigma scales by 1/q
    assert prior.dispersion_ratio == pytest.approx(0.25, rel=1e-14)
    assert_allclose(prior.coef_scale, V / 0.25, rtol=1e-12)
    assert prior.phi == 0.5
    assert math.isinf(prior.dof) and math.isinf(prior.rate)


def test_unknown_dispersion_family_change_ratio():
    rng = np.random.default_rng(35)
    n = 3
    loc = rng.standard_normal(n) * 0.1
    V = random_spd(rng, n) * 0.01
    spec = make_spec(mean0=0.3)
    prior = induce_prior(
        loc, V, spec, get_family("simplex"), target_family=get_family("binomial-proportion")
    )
    # q = v_simplex(mu0) / v_target(mu0) at the dispersion conditioning mean
    q = float(get_family("simplex").variance(0.3) / get_family("binomial-proportion").variance(0.3))
    assert prior.dispersion_ratio == pytest.approx(q, rel=1e-12)
    assert prior.rate == pytest.approx(118.0 * q, rel=1e-12)
    assert prior.dof == pytest.approx(14.3)
    assert prior.family == "binomial-proportion"
    assert_allclose(prior.coef_scale, V / q, rtol=1e-10)


def test_family_change_requires_conditioning_mean():
    spec = DispersionSpec(dof=14.3, rate=118.0)  # no mean0 recorded
    with pytest.raises(DomainError, match="mean"):
        induce_prior(
            np.zeros(2), np.eye(2), spec, get_family("simplex"),
            target_family=get_family("binomial-proportion"),
        )


def test_prior_as_dict_serialises():
    prior = induce_prior(np.zeros(2), np.eye(2), make_spec(), get_family("simplex"), truncation=1)
    d = prior.as_dict()
    assert d["truncation"] == 1
    assert d["names"] == ["b0", "b1"]
    assert len(d["coef_scale"]) == 2


def test_spd_violations_raise():
    spec = make_spec()
    bad = np.array([[1.0, 2.0], [2.0, 1.0]])  # indefinite
    with pytest.raises(SolverError, match="positive definite"):
        induce_prior(np.zeros(2), bad, spec, get_family("simplex"))
    with pytest.raises(DomainError):
        induce_prior(np.zeros(3), np.eye(2), spec, get_family("simplex"))


# -- divergences ---------------------------------------------------------------


def kl_normal_oracle_1d(m_a, v_a, m_b, v_b, lam=1.0):
    return 0.5 * (math.log(v_b / v_a) + v_a / v_b - 1.0 + lam * (m_a - m_b) ** 2 / v_b)


def test_kl_normal_univariate_analytic():
    got = kl_normal(np.array([0.3]), np.array([[2.0]]), np.array([-0.1]), np.array([[1.5]]))
    assert_allclose(got, kl_normal_oracle_1d(0.3, 2.0, -0.1, 1.5), rtol=1e-12)


def test_kl_normal_properties():
    rng = np.random.default_rng(36)
    n = 4
    m = rng.standard_normal(n)
    S = random_spd(rng, n)
    assert kl_normal(m, S, m, S) == pytest.approx(0.0, abs=1e-12)
    m2 = rng.standard_normal(n)
    S2 = random_spd(rng, n)
    base = kl_normal(m, S, m2, S2, lam=1.0)
    heavy = kl_normal(m, S, m2, S2, lam=3.0)
    quad = heavy - base
    # lam scales only the location term
    assert_allclose(
        kl_normal(m, S, m2, S2, lam=2.0), base + quad / 2.0, rtol=1e-10
    )
    assert base > 0


def test_kl_normal_multivariate_oracle():
    rng = np.random.default_rng(37)
    n = 3
    m_a, m_b = rng.standard_normal(n), rng.standard_normal(n)
    S_a, S_b = random_spd(rng, n), random_spd(rng, n)
    want = 0.5 * (
        math.log(np.linalg.det(S_b) / np.linalg.det(S_a))
        + np.trace(np.linalg.solve(S_b, S_a))
        - n
        + (m_a - m_b) @ np.linalg.solve(S_b, m_a - m_b)
    )
    assert_allclose(kl_normal(m_a, S_a, m_b, S_b), want, rtol=1e-11)


def test_truncation_divergence_closed_form():
    # n = 2, rho = 0.8 against independence: 0.5 log(1/(1-rho^2))
    R = np.array([[1.0, 0.8], [0.8, 1.0]])
    got = truncation_divergence(R, np.eye(2))
    assert_allclose(got, 0.5108256237659909, rtol=1e-13)
    assert_allclose(got, 0.5 * math.log(1.0 / 0.36), rtol=1e-13)
    assert truncation_divergence(R, R) == pytest.approx(0.0, abs=1e-13)


def test_truncation_divergence_general_oracle():
    rng = np.random.default_rng(38)
    n = 4
    a = rng.standard_normal((n, n))
    R = a @ a.T + n * np.eye(n)
    d = np.sqrt(np.diag(R))
    R = R / np.outer(d, d)
    Rt = np.eye(n)
    want = 0.5 * (
        math.log(np.linalg.det(Rt) / np.linalg.det(R))
        + np.trace(np.linalg.solve(Rt, R))
        - n
    )
    assert_allclose(truncation_divergence(R, Rt), want, rtol=1e-11)


def test_truncation_threshold_constant():
    # flagged once the truncated law loses a factor sqrt(10) of density
    assert_allclose(TRUNCATION_THRESHOLD, math.log(math.sqrt(10.0)), rtol=1e-15)
    assert_allclose(TRUNCATION_THRESHOLD, 1.151292546497023, rtol=1e-15)
