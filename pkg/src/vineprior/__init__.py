"""Interactive prior elicitation for generalised linear models.

The engine turns an expert's stated quantiles into a conjugate-style joint
prior: a gamma law on the inverse dispersion, a generalised-t law on the
scenario means built marginal by marginal and level by level through
conditional medians, and finally a coefficient prior by projecting that law
onto any full-rank regression basis.  Sessions are replayable transcripts;
a CLI and an HTTP API wrap the same engine.
"""

from .dispersion import (
    DiscrepancyReport,
    DispersionSpec,
    PowerResult,
    berry_esseen_bound,
    discrepancy_report,
    elicit_dispersion,
    elicit_power_parameter,
    known_power_rate,
    lognormal_transform,
    power_median_bounds,
    sample_mean_mc,
    sample_mean_quantile,
    solve_sample_mean_tail,
)
from .errors import (
    ConsistencyError,
    DomainError,
    ElicitationError,
    PhaseError,
    PrecisionError,
    SolverError,
    TranscriptError,
)
from .families import Family, family_names, get_family, sample_ed
from .links import LinkFunction, get_link, register_link
from .projection import (
    TRUNCATION_THRESHOLD,
    DesignMatrix,
    InducedPrior,
    induce_prior,
    kl_normal,
    truncation_divergence,
    truncation_divergence_series,
)
from .rng import RandomSource
from .scenarios import ScenarioSet, build_multinomial_scenarios
from .seagrass import seagrass_fixture
from .session import (
    Session,
    advance,
    feedback_payload,
    load_and_replay,
    save_transcript,
)
from .vine import (
    FeedbackCurve,
    MarginalFit,
    VineState,
    elicit_marginal,
    marginal_feedback,
    pcorr_to_corr,
)

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "DesignMatrix",
    "DiscrepancyReport",
    "DispersionSpec",
    "DomainError",
    "ElicitationError",
    "Family",
    "FeedbackCurve",
    "InducedPrior",
    "LinkFunction",
    "MarginalFit",
    "PhaseError",
    "PowerResult",
    "PrecisionError",
    "RandomSource",
    "ScenarioSet",
    "Session",
    "SolverError",
    "TranscriptError",
    "TRUNCATION_THRESHOLD",
    "VineState",
    "advance",
    "berry_esseen_bound",
    "build_multinomial_scenarios",
    "discrepancy_report",
    "elicit_dispersion",
    "elicit_marginal",
    "elicit_power_parameter",
    "family_names",
    "feedback_payload",
    "get_family",
    "get_link",
    "induce_prior",
    "kl_normal",
    "known_power_rate",
    "load_and_replay",
    "lognormal_transform",
    "marginal_feedback",
    "pcorr_to_corr",
    "power_median_bounds",
    "register_link",
    "sample_ed",
    "sample_mean_mc",
    "sample_mean_quantile",
    "save_transcript",
    "seagrass_fixture",
    "solve_sample_mean_tail",
    "truncation_divergence",
    "truncation_divergence_series",
    "__version__",
]
