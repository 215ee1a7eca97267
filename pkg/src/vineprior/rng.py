"""Deterministic random source for Monte Carlo diagnostics.

A :class:`RandomSource` wraps a numpy PCG64 generator seeded through
``SeedSequence(seed, spawn_key=(stream,))``.  Identical ``(seed, stream)``
pairs produce identical draw sequences across runs and platforms, and
``split`` hands out child streams whose outputs are disjoint and ordered,
so parallel Monte Carlo runs can be merged deterministically by stream
index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class RandomSource:
    """Seedable, splittable source of pseudo-randomness."""

    seed: int
    stream: int = 0
    generator: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise TypeError("seed must be an integer")
        if self.seed < 0 or self.stream < 0:
            raise ValueError("seed and stream must be non-negative")
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        object.__setattr__(self, "generator", np.random.Generator(np.random.PCG64(ss)))

    def split(self, n: int) -> list["RandomSource"]:
        """Return ``n`` child sources with streams derived from this one.

        Children are keyed by ``(seed, stream * 1000 + 1 + i)`` so sibling
        splits never collide for fewer than 1000 children per node.
        """
        if n < 1:
            raise ValueError("need at least one child stream")
        if n >= 1000:
            raise ValueError("split supports at most 999 children")
        return [RandomSource(self.seed, self.stream * 1000 + 1 + i) for i in range(n)]
