"""Exception hierarchy for the elicitation engine.

Every rejection the engine can produce maps to one of these classes so that
callers (session layer, HTTP service, CLI) can translate failures uniformly:
domain violations, consistency rejections carrying admissible ranges, phase
violations, and transcript corruption.
"""

from __future__ import annotations


class ElicitationError(Exception):
    """Base class for all engine-raised errors."""


class DomainError(ElicitationError):
    """An input lies outside its mathematical domain (probabilities,
    positivity, mean-domain membership, matrix shape or rank)."""


class ConsistencyError(ElicitationError):
    """An assessment is incompatible with the model class.

    Carries the admissible range so a facilitator can re-ask the question.
    ``admissible`` is a ``(low, high)`` tuple on the scale of the rejected
    input, or None when no finite range exists.
    """

    def __init__(self, message: str, admissible: tuple[float, float] | None = None):
        super().__init__(message)
        self.admissible = admissible


class SolverError(ElicitationError):
    """A root-finding or quadrature routine failed to converge or to
    bracket a solution inside its configured bounds."""


class PrecisionError(ElicitationError):
    """A closed-form expression has lost all numerical precision for the
    requested parameters (overflow guard)."""


class PhaseError(ElicitationError):
    """An operation was attempted in a session phase that does not allow it."""


class TranscriptError(ElicitationError):
    """A transcript is malformed, has an unsupported schema version, or
    fails replay verification.

    ``event_index`` identifies the offending event when known.
    """

    def __init__(self, message: str, event_index: int | None = None):
        super().__init__(message)
        self.event_index = event_index
