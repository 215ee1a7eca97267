"""Link functions mapping means to linear predictors.

Each link is strictly monotone on an open mean domain.  The sign of the
derivative is carried explicitly because every feedback formula that maps
linear-predictor distributions back to mean distributions needs it to keep
cumulative distribution functions increasing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import expit, logit as _logit

from .errors import DomainError

__all__ = ["LinkFunction", "get_link", "register_link", "LINKS"]


@dataclass(frozen=True)
class LinkFunction:
    """A strictly monotone link with explicit domain and slope sign.

    ``to_linear`` is the link g, ``to_mean`` its inverse, ``deriv`` is
    dg/dmu, and ``sign`` is the constant sign of that derivative (+1 or -1).
    ``support`` is the open interval of valid means.
    """

    name: str
    to_linear: Callable[[np.ndarray], np.ndarray]
    to_mean: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    sign: int
    support: tuple[float, float]

    def contains(self, mu) -> bool:
        lo, hi = self.support
        mu = np.asarray(mu, dtype=float)
        return bool(np.all(mu > lo) and np.all(mu < hi))

    def require(self, mu, what: str = "mean") -> None:
        if not np.all(np.isfinite(np.asarray(mu, dtype=float))):
            raise DomainError(f"{what} must be finite")
        if not self.contains(mu):
            lo, hi = self.support
            raise DomainError(f"{what} outside the open domain ({lo}, {hi}) of link {self.name!r}")

    def clamp(self, mu, eps: float = 1e-9):
        """Clamp values into the display-safe interior of the domain.

        Only used when rendering feedback grids; assessments are validated
        strictly instead.
        """
        lo, hi = self.support
        mu = np.asarray(mu, dtype=float)
        width = hi - lo if math.isfinite(hi - lo) else 1.0
        lo_c = lo + eps * width if math.isfinite(lo) else -np.inf
        hi_c = hi - eps * width if math.isfinite(hi) else np.inf
        return np.clip(mu, lo_c, hi_c)


def _cloglog(mu):
    mu = np.asarray(mu, dtype=float)
    return np.log(-np.log1p(-mu))


def _cloglog_inv(eta):
    eta = np.asarray(eta, dtype=float)
    return -np.expm1(-np.exp(eta))


def _cloglog_deriv(mu):
    mu = np.asarray(mu, dtype=float)
    return 1.0 / ((1.0 - mu) * (-np.log1p(-mu)))


LINKS: dict[str, LinkFunction] = {}


def register_link(link: LinkFunction) -> None:
    if link.sign not in (-1, 1):
        raise DomainError("link slope sign must be +1 or -1")
    LINKS[link.name] = link


def get_link(name: str) -> LinkFunction:
    try:
        return LINKS[name]
    except KeyError:
        raise DomainError(f"unknown link {name!r}; registered: {sorted(LINKS)}") from None


register_link(
    LinkFunction(
        name="logit",
        to_linear=lambda mu: _logit(np.asarray(mu, dtype=float)),
        to_mean=lambda eta: expit(np.asarray(eta, dtype=float)),
        deriv=lambda mu: 1.0 / (np.asarray(mu, dtype=float) * (1.0 - np.asarray(mu, dtype=float))),
        sign=1,
        support=(0.0, 1.0),
    )
)
register_link(
    LinkFunction(
        name="log",
        to_linear=lambda mu: np.log(np.asarray(mu, dtype=float)),
        to_mean=lambda eta: np.exp(np.asarray(eta, dtype=float)),
        deriv=lambda mu: 1.0 / np.asarray(mu, dtype=float),
        sign=1,
        support=(0.0, math.inf),
    )
)
register_link(
    LinkFunction(
        name="identity",
        to_linear=lambda mu: np.asarray(mu, dtype=float),
        to_mean=lambda eta: np.asarray(eta, dtype=float),
        deriv=lambda mu: np.ones_like(np.asarray(mu, dtype=float)),
        sign=1,
        support=(-math.inf, math.inf),
    )
)
register_link(
    LinkFunction(
        name="cloglog",
        to_linear=_cloglog,
        to_mean=_cloglog_inv,
        deriv=_cloglog_deriv,
        sign=1,
        support=(0.0, 1.0),
    )
)
