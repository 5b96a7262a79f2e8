"""State containers for the four-amplitude double-well system.

Basis ordering throughout the package:

    index 1 -- spin-up   particle in the right well
    index 2 -- spin-down particle in the left  well
    index 3 -- spin-up   particle in the left  well
    index 4 -- spin-down particle in the right well
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True, eq=False)
class StateVector:
    """Four complex amplitudes at a single instant."""

    a: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        arr = np.asarray(self.a, dtype=complex).reshape(-1)
        if arr.shape != (4,):
            raise ValueError(f"state needs exactly 4 amplitudes, got {arr.shape}")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("state amplitudes must be finite")
        object.__setattr__(self, "a", arr)

    @classmethod
    def basis(cls, k: int, t: float = 0.0) -> "StateVector":
        """Basis state with unit amplitude in component ``k`` (1-based)."""
        if k not in (1, 2, 3, 4):
            raise ValueError("basis index must be in 1..4")
        amps = np.zeros(4, dtype=complex)
        amps[k - 1] = 1.0
        return cls(amps, t)

    @property
    def probabilities(self) -> np.ndarray:
        """Occupation probabilities P_k = |a_k|^2."""
        return np.abs(self.a) ** 2

    @property
    def total_probability(self) -> float:
        return float(np.sum(np.abs(self.a) ** 2))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """A sampled time series of states.

    ``amplitudes[i]`` holds the four complex amplitudes at ``times[i]``.
    Probabilities are always recomputed from the amplitudes, so the
    ``probabilities`` view can never drift out of sync with the states.
    """

    times: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float).reshape(-1)
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.shape != (t.size, 4):
            raise ValueError(f"amplitude array {a.shape} does not match {t.size} times")
        if t.size == 0:
            raise ValueError("trajectory needs at least one sample")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "amplitudes", a)

    def __len__(self) -> int:
        return self.times.size

    @cached_property
    def probabilities(self) -> np.ndarray:
        """(n, 5) array with columns P1..P4 and the running total."""
        p = np.abs(self.amplitudes) ** 2
        return np.column_stack([p, p.sum(axis=1)])

    @property
    def total_probability(self) -> np.ndarray:
        return self.probabilities[:, 4]

    def state(self, i: int) -> StateVector:
        return StateVector(self.amplitudes[i], float(self.times[i]))

    @property
    def states(self) -> list[StateVector]:
        return [self.state(i) for i in range(len(self))]
