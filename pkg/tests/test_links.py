import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from vineprior.errors import DomainError
from vineprior.links import LinkFunction, get_link, register_link

NAMES = ["identity", "log", "logit", "cloglog"]


@pytest.mark.parametrize(
    "name, hi",
    [("identity", 6.0), ("log", 6.0), ("logit", 6.0), ("cloglog", 2.5)],
)
def test_round_trip_from_linear(name, hi):
    # cloglog saturates on the mean scale near eta = 3.6 in double precision
    link = get_link(name)
    eta = np.linspace(-6.0, hi, 31)
    assert_allclose(link.to_linear(link.to_mean(eta)), eta, rtol=0, atol=1e-9)


@pytest.mark.parametrize(
    "name, grid",
    [
        ("identity", np.linspace(-40.0, 40.0, 17)),
        ("log", np.geomspace(1e-6, 1e4, 17)),
        ("logit", np.linspace(0.001, 0.999, 17)),
        ("cloglog", np.linspace(0.001, 0.999, 17)),
    ],
)
def test_round_trip_from_mean(name, grid):
    link = get_link(name)
    assert_allclose(link.to_mean(link.to_linear(grid)), grid, rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize(
    "name, grid",
    [
        ("identity", np.linspace(-3.0, 3.0, 9)),
        ("log", np.geomspace(0.01, 50.0, 9)),
        ("logit", np.linspace(0.05, 0.95, 9)),
        ("cloglog", np.linspace(0.05, 0.95, 9)),
    ],
)
def test_deriv_matches_finite_differences(name, grid):
    link = get_link(name)
    h = 1e-6 * np.maximum(1.0, np.abs(grid))
    fd = (np.asarray(link.to_linear(grid + h)) - np.asarray(link.to_linear(grid - h))) / (2 * h)
    assert_allclose(link.deriv(grid), fd, rtol=5e-6)


def test_known_values():
    assert_allclose(get_link("logit").to_linear(0.75), math.log(3.0), rtol=1e-15)
    assert_allclose(get_link("log").to_mean(0.0), 1.0, rtol=0)
    # cloglog: g^-1(eta) = 1 - exp(-exp(eta))
    assert_allclose(get_link("cloglog").to_mean(0.3), 1.0 - math.exp(-math.exp(0.3)), rtol=1e-15)
    assert_allclose(get_link("cloglog").to_linear(0.5), math.log(math.log(2.0)), rtol=1e-15)


@given(st.floats(min_value=-8.0, max_value=8.0))
def test_logit_round_trip_property(eta):
    link = get_link("logit")
    assert float(link.to_linear(link.to_mean(eta))) == pytest.approx(eta, abs=1e-9)


def test_support_enforced():
    logit = get_link("logit")
    assert logit.contains(0.5)
    assert not logit.contains(0.0)
    assert not logit.contains(1.2)
    with pytest.raises(DomainError, match="outside"):
        logit.require(1.5)
    with pytest.raises(DomainError):
        get_link("log").require(-1.0)
    get_link("identity").require(-1.0)


def test_clamp_stays_strictly_inside():
    logit = get_link("logit")
    assert 0.0 < float(logit.clamp(0.0)) < 1.0
    assert 0.0 < float(logit.clamp(1.0)) < 1.0
    assert float(logit.clamp(0.4)) == 0.4
    log = get_link("log")
    assert float(log.clamp(0.0)) > 0.0


def test_monotone_increasing():
    # all registered links carry sign +1 and must be increasing
    for name in NAMES:
        link = get_link(name)
        assert link.sign == 1
        lo, hi = link.support
        grid = np.linspace(
            lo if math.isfinite(lo) else -5.0, hi if math.isfinite(hi) else 5.0, 41
        )[1:-1]
        eta = np.asarray(link.to_linear(grid), dtype=float)
        assert np.all(np.diff(eta) > 0)


def test_unknown_link_rejected():
    with pytest.raises(DomainError, match="unknown link"):
        get_link("probit")


def test_register_custom_link():
    half = LinkFunction(
        name="half",
        to_linear=lambda mu: np.asarray(mu, dtype=float) / 2.0,
        to_mean=lambda eta: np.asarray(eta, dtype=float) * 2.0,
        deriv=lambda mu: np.full_like(np.asarray(mu, dtype=float), 0.5),
        sign=1,
        support=(-math.inf, math.inf),
    )
    register_link(half)
    assert get_link("half") is half
    assert_allclose(get_link("half").to_mean(1.5), 3.0)
