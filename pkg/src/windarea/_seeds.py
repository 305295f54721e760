"""Seed plumbing: every random quantity in the package flows from an explicit
64-bit seed through a counter-based generator (Philox), so results do not
depend on call order, thread count, or global state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MAX = 2**64


@dataclass(frozen=True)
class RngSeed:
    """A 64-bit unsigned master seed."""

    value: int

    def __post_init__(self) -> None:
        if not isinstance(self.value, (int, np.integer)):
            raise TypeError(f"seed must be an integer, got {type(self.value).__name__}")
        if not 0 <= int(self.value) < _MAX:
            raise ValueError(f"seed must be a uint64, got {self.value}")
        object.__setattr__(self, "value", int(self.value))


def as_seed(seed: int | RngSeed) -> RngSeed:
    return seed if isinstance(seed, RngSeed) else RngSeed(seed)


def derive_seed(seed: int | RngSeed, *indices: int) -> RngSeed:
    """Derive an independent child seed, e.g. per ensemble path or MC trial.

    Stable across runs and platforms: (seed, indices) -> uint64 via SeedSequence.
    """
    entropy = (as_seed(seed).value,) + tuple(int(i) for i in indices)
    return RngSeed(int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0]))


def make_generator(seed: int | RngSeed) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(as_seed(seed).value))
