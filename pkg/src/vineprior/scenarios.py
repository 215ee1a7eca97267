"""Scenario sets: the covariate rows shown to the expert.

A scenario is one row of covariate values at which the expert assesses the
response mean; the set also fixes the link and the candidate response
families for the whole session.  Scenario rows are decoupled from the model
matrix used at induction time (a scenario set never needs a regression
basis).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import DomainError
from .families import Family, get_family
from .links import LinkFunction, get_link

__all__ = ["ScenarioSet", "build_multinomial_scenarios"]


@dataclass(frozen=True)
class ScenarioSet:
    """Named covariate rows plus link, candidate families, and descriptions.

    ``known_phi`` marks sets whose construction fixes the dispersion (the
    multinomial expansion); sessions over such a set skip the
    random-component quantiles entirely.
    """

    covariates: np.ndarray
    covariate_names: tuple[str, ...]
    link: LinkFunction
    families: tuple[Family, ...]
    descriptions: tuple[str, ...] = ()
    known_phi: float | None = None

    def __post_init__(self):
        U = np.atleast_2d(np.asarray(self.covariates, dtype=float))
        if U.ndim != 2 or U.shape[0] < 1 or not np.all(np.isfinite(U)):
            raise DomainError("covariates must be a finite matrix with at least one row")
        names = tuple(str(c) for c in self.covariate_names)
        if len(names) != U.shape[1]:
            raise DomainError("need one name per covariate column")
        if len(set(names)) != len(names):
            raise DomainError("covariate column names must be unique")
        fams = tuple(self.families)
        if not fams:
            raise DomainError("need at least one candidate family")
        desc = tuple(self.descriptions) if self.descriptions else tuple(
            f"scenario {i + 1}: " + ", ".join(f"{nm}={v:g}" for nm, v in zip(names, row))
            for i, row in enumerate(U)
        )
        if len(desc) != U.shape[0]:
            raise DomainError("need one description per scenario row")
        if self.known_phi is not None and not (
            self.known_phi > 0 and math.isfinite(self.known_phi)
        ):
            raise DomainError("known dispersion must be positive and finite")
        object.__setattr__(self, "covariates", U)
        object.__setattr__(self, "covariate_names", names)
        object.__setattr__(self, "families", fams)
        object.__setattr__(self, "descriptions", desc)

    @property
    def n(self) -> int:
        return self.covariates.shape[0]

    def as_dict(self) -> dict[str, Any]:
        return {
            "covariates": self.covariates.tolist(),
            "covariate_names": list(self.covariate_names),
            "link": self.link.name,
            "families": [
                {"name": f.name, "power": f.power if f.name == "compound-poisson" else None}
                for f in self.families
            ],
            "descriptions": list(self.descriptions),
            "known_phi": self.known_phi,
        }

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "ScenarioSet":
        return cls(
            covariates=np.asarray(payload["covariates"], dtype=float),
            covariate_names=tuple(payload["covariate_names"]),
            link=get_link(payload["link"]),
            families=tuple(
                get_family(f["name"], f.get("power")) for f in payload["families"]
            ),
            descriptions=tuple(payload.get("descriptions") or ()),
            known_phi=payload.get("known_phi"),
        )


def build_multinomial_scenarios(
    base_covariates: np.ndarray | Sequence[Sequence[float]],
    d: int,
    coding: str = "additive",
    covariate_names: Sequence[str] | None = None,
) -> ScenarioSet:
    """Expand covariate rows into per-category odds scenarios.

    A response with d+1 categories is elicited through d positive targets
    per observation, each a ratio of category probabilities handled as a
    log-link mean with dispersion fixed at 1.  ``coding='additive'`` targets
    the baseline-category odds p[j,k]/p[j,d+1]; ``coding='sequential'``
    targets the continuation ratio p[j,k]/(1 - sum of p[j,1..k]).
    """
    if not (isinstance(d, (int, np.integer)) and d >= 2):
        raise DomainError("category count d must be an integer >= 2")
    if coding not in ("additive", "sequential"):
        raise DomainError("coding must be 'additive' or 'sequential'")
    base = np.atleast_2d(np.asarray(base_covariates, dtype=float))
    if base.shape[0] < 1 or not np.all(np.isfinite(base)):
        raise DomainError("base covariates must be a finite matrix with at least one row")
    p = base.shape[1]
    names = tuple(covariate_names) if covariate_names else tuple(f"u{j + 1}" for j in range(p))
    if len(names) != p:
        raise DomainError("need one name per base covariate column")
    if "category" in names:
        raise DomainError("'category' is reserved for the expanded column")

    rows = []
    descriptions = []
    for j, row in enumerate(base):
        at = ", ".join(f"{nm}={v:g}" for nm, v in zip(names, row))
        for k in range(1, int(d) + 1):
            rows.append(np.append(row, float(k)))
            if coding == "additive":
                target = f"odds p[{j + 1},{k}]/p[{j + 1},{int(d) + 1}]"
            else:
                target = f"continuation odds p[{j + 1},{k}]/(1 - sum p[{j + 1},1..{k}])"
            descriptions.append(f"observation {j + 1} ({at}), category {k}: {target}")

    return ScenarioSet(
        covariates=np.asarray(rows),
        covariate_names=names + ("category",),
        link=get_link("log"),
        families=(get_family("poisson"),),
        descriptions=tuple(descriptions),
        known_phi=1.0,
    )
