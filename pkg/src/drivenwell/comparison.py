"""Deviation metrics between trajectories and steady-state estimation."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, GridAlignmentError
from .state import Trajectory


@dataclass(frozen=True)
class DeviationReport:
    """Worst-case differences between two trajectories on a shared grid.

    ``time_of_max`` is where the largest probability deviation occurs.
    """

    max_abs_amplitude_dev: float
    max_abs_probability_dev: float
    time_of_max: float


def compare_trajectories(a: Trajectory, b: Trajectory) -> DeviationReport:
    """Component-wise maximum deviations over a common time grid."""
    if len(a) != len(b) or not np.array_equal(a.times, b.times):
        raise GridAlignmentError("trajectories are sampled on different time grids")
    amp_dev = float(np.max(np.abs(a.amplitudes - b.amplitudes)))
    prob_diff = np.abs(a.probabilities - b.probabilities)
    idx = int(np.argmax(prob_diff.max(axis=1)))
    return DeviationReport(
        max_abs_amplitude_dev=amp_dev,
        max_abs_probability_dev=float(prob_diff.max()),
        time_of_max=float(a.times[idx]),
    )


@dataclass(frozen=True)
class AsymptoticEstimate:
    """Trailing-window mean of the total probability with a spread diagnostic."""

    mean: float
    std: float
    window_start: float
    samples: int


def asymptotic_total_probability(traj: Trajectory,
                                 window_fraction: float = 0.2) -> AsymptoticEstimate:
    """Steady total probability, averaged over the trailing window.

    Meaningful for converged Case-B dynamics; the reported standard deviation
    over the window flags trajectories that have not settled yet.
    """
    if not (0.0 < window_fraction <= 0.5):
        raise ValueError("window_fraction must lie in (0, 0.5]")
    total = traj.total_probability
    start = int(math.floor((1.0 - window_fraction) * len(traj)))
    window = total[start:]
    if not np.all(np.isfinite(window)):
        bad = start + int(np.argmax(~np.isfinite(window)))
        raise DivergenceError(
            f"non-finite total probability at t = {traj.times[bad]:.6g}",
            float(traj.times[bad]))
    return AsymptoticEstimate(
        mean=float(window.mean()),
        std=float(window.std()),
        window_start=float(traj.times[start]),
        samples=int(window.size),
    )
