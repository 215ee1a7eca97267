import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import quad
from scipy.stats import invgauss as sp_invgauss, norm as sp_norm, gamma as sp_gamma

from vineprior.dispersion import DispersionSpec
from vineprior.errors import DomainError
from vineprior.families import (
    cp_zero_probability,
    family_names,
    get_family,
    sample_ed,
    sample_studentised_simplex,
    simplex_logpdf,
    simplex_variance_approx,
    simplex_variance_exact,
    studentised_simplex_cdf_grid,
    studentised_simplex_logpdf,
)
from vineprior.rng import RandomSource


def test_registry():
    names = family_names()
    for name in (
        "normal",
        "poisson",
        "gamma",
        "inverse-gaussian",
        "binomial-proportion",
        "simplex",
        "compound-poisson",
    ):
        assert name in names
    with pytest.raises(DomainError, match="unknown family"):
        get_family("weibull")
    with pytest.raises(DomainError, match="power"):
        get_family("normal", power=1.5)
    with pytest.raises(DomainError):
        get_family("compound-poisson", power=2.3)


@pytest.mark.parametrize(
    "name, power, mu, expected",
    [
        ("normal", None, 1.7, 1.0),
        ("poisson", None, 3.2, 3.2),
        ("gamma", None, 2.5, 6.25),
        ("inverse-gaussian", None, 2.0, 8.0),
        ("binomial-proportion", None, 0.25, 0.1875),
        ("compound-poisson", 1.5, 4.0, 8.0),
        ("simplex", None, 0.5, 0.5**3 * 0.5**3),
    ],
)
def test_variance_functions(name, power, mu, expected):
    fam = get_family(name, power)
    assert_allclose(fam.variance(mu), expected, rtol=1e-14)


def test_variance_needs_power():
    cp = get_family("compound-poisson")
    assert cp.power is None
    with pytest.raises(DomainError, match="power"):
        cp.variance(1.0)
    assert cp.with_power(1.4).power == 1.4


def test_support_enforced():
    with pytest.raises(DomainError, match="outside"):
        get_family("gamma").variance(-1.0)
    with pytest.raises(DomainError):
        get_family("binomial-proportion").variance(1.0)


@pytest.mark.parametrize(
    "name, power, mu, phi",
    [
        ("normal", None, 0.7, 2.3),
        ("poisson", None, 3.0, 1.0),
        ("gamma", None, 2.0, 0.5),
        ("inverse-gaussian", None, 1.5, 0.4),
        ("binomial-proportion", None, 0.3, 0.05),
        ("compound-poisson", 1.5, 2.0, 0.8),
    ],
)
def test_sampler_moments(name, power, mu, phi):
    fam = get_family(name, power)
    x = sample_ed(fam, mu, phi, 400_000, RandomSource(5))
    v = phi * float(fam.variance(mu))
    assert x.mean() == pytest.approx(mu, abs=6 * math.sqrt(v / x.size))
    assert x.var() == pytest.approx(v, rel=0.05)


def test_poisson_dispersion_thins_counts():
    # phi != 1 scales a Poisson(mu/phi) draw by phi to keep mean mu, var phi*mu
    x = sample_ed(get_family("poisson"), 4.0, 0.5, 200_000, RandomSource(6))
    assert x.mean() == pytest.approx(4.0, rel=0.01)
    assert x.var() == pytest.approx(2.0, rel=0.03)


def test_binomial_proportion_support():
    x = sample_ed(get_family("binomial-proportion"), 0.3, 0.1, 10_000, RandomSource(7))
    assert np.all(x >= 0.0) and np.all(x <= 1.0)
    assert x.mean() == pytest.approx(0.3, abs=0.01)


def test_cp_zero_probability_formula():
    # P(psi = 0) = exp(-mu^(2-p) / (phi (2-p)))
    mu, p, phi = 2.0, 1.5, 0.8
    assert_allclose(cp_zero_probability(mu, p, phi), math.exp(-(mu ** 0.5) / (0.8 * 0.5)), rtol=1e-14)


def test_cp_sampler_zero_mass():
    mu, p, phi = 2.0, 1.5, 0.8
    x = sample_ed(get_family("compound-poisson", p), mu, phi, 200_000, RandomSource(8))
    frac = float(np.mean(x == 0.0))
    assert frac == pytest.approx(cp_zero_probability(mu, p, phi), abs=0.005)
    assert np.all(x >= 0.0)


@pytest.mark.parametrize(
    "name, x, mu, phi",
    [("normal", 0.9, 0.7, 2.3), ("gamma", 1.1, 2.0, 0.5), ("inverse-gaussian", 0.8, 1.5, 0.4)],
)
def test_logpdf_against_scipy(name, x, mu, phi):
    fam = get_family(name)
    got = float(fam.logpdf(x, mu, phi))
    if name == "normal":
        want = sp_norm.logpdf(x, mu, math.sqrt(phi))
    elif name == "gamma":
        # Gamma with mean mu, variance phi mu^2: shape 1/phi, scale mu phi
        want = sp_gamma.logpdf(x, 1.0 / phi, scale=mu * phi)
    else:
        # scipy's invgauss(mu=m, scale=s) has mean m*s and lambda = s
        lam = 1.0 / phi
        want = sp_invgauss.logpdf(x, mu / lam, scale=lam)
    assert_allclose(got, want, rtol=1e-12)


def test_logpdf_vectorised_phi():
    fam = get_family("gamma")
    xs = np.array([0.5, 1.0, 2.0])
    phis = np.array([0.2, 0.5, 1.0])
    got = fam.logpdf(xs, 1.5, phis)
    want = [float(fam.logpdf(x, 1.5, p)) for x, p in zip(xs, phis)]
    assert_allclose(got, want, rtol=1e-14)


def test_no_density_families_say_so():
    assert not get_family("poisson").has_density
    assert not get_family("binomial-proportion").has_density
    assert get_family("simplex").has_density
    with pytest.raises(DomainError, match="no continuous density"):
        get_family("poisson").logpdf(1.0, 1.0, 1.0)


def test_convolution_flags():
    assert get_family("normal").supports_convolution
    assert get_family("compound-poisson", 1.3).supports_convolution
    assert not get_family("simplex").supports_convolution


def test_simplex_logpdf_normalised():
    for mu, lam in ((0.3, 10.0), (0.1, 40.0)):
        mass, _ = quad(lambda x: math.exp(simplex_logpdf(x, mu, lam)), 1e-12, 1 - 1e-12)
        assert_allclose(mass, 1.0, rtol=1e-8)


def test_simplex_variance_exact_oracle():
    # against an mpmath quadrature oracle at 40 digits
    cases = [
        (0.3, 10.0, 0.00091410983615938544),
        (0.01, 100.0, 9.7029614704383118e-9),
        (0.2, 25.0, 0.00016333924219692592),
    ]
    for mu, lam, want in cases:
        assert_allclose(simplex_variance_exact(mu, lam), want, rtol=1e-8)


def test_simplex_variance_approx_converges():
    # relative error of mu^3(1-mu)^3/lam shrinks as lam grows
    for mu in (0.01, 0.3):
        errs = []
        for lam in (10.0, 100.0, 1000.0):
            exact = simplex_variance_exact(mu, lam)
            errs.append(abs(simplex_variance_approx(mu, lam) - exact) / exact)
        assert errs[0] > errs[1] > errs[2]


def test_simplex_sampler_matches_exact_moments():
    mu, lam = 0.3, 10.0
    x = sample_ed(get_family("simplex"), mu, 1.0 / lam, 200_000, RandomSource(9))
    assert np.all((x > 0.0) & (x < 1.0))
    assert x.mean() == pytest.approx(mu, abs=0.001)
    assert x.var() == pytest.approx(simplex_variance_exact(mu, lam), rel=0.05)


def test_studentised_simplex_normalised_and_sampled():
    mu, dof, rate = 0.2, 14.3, 11.8
    mass, _ = quad(
        lambda x: math.exp(studentised_simplex_logpdf(x, mu, dof, rate)), 1e-12, 1 - 1e-12
    )
    assert_allclose(mass, 1.0, rtol=1e-6)
    x = sample_studentised_simplex(mu, dof, rate, 50_000, RandomSource(10))
    grid, cdf = studentised_simplex_cdf_grid(mu, dof, rate)
    # empirical cdf against the quadrature cdf at interior grid points
    probe = grid[(grid > np.quantile(x, 0.02)) & (grid < np.quantile(x, 0.98))][::16]
    emp = np.searchsorted(np.sort(x), probe) / x.size
    want = np.interp(probe, grid, cdf)
    assert np.max(np.abs(emp - want)) < 0.01


def test_lognormal_target_is_normal_on_log_scale():
    fam = get_family("lognormal-target")
    assert fam.base_family == "normal"
    assert_allclose(fam.variance(3.0), 1.0)


def test_sample_ed_validates():
    spec = DispersionSpec.known(1.0)
    assert spec.is_known
    with pytest.raises(DomainError):
        sample_ed(get_family("gamma"), -1.0, 1.0, 10, RandomSource(1))
    with pytest.raises(DomainError):
        sample_ed(get_family("gamma"), 1.0, -0.5, 10, RandomSource(1))
