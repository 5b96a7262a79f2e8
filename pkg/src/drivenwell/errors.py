"""Exception types shared across the library."""


class ResonanceError(ValueError):
    """Omega/omega is not integer, so no cycle-averaged effective model exists."""


class ParityError(ValueError):
    """A parity-specific discriminant was evaluated at the wrong Omega/omega parity."""


class DegeneracyError(RuntimeError):
    """Floquet eigenvectors are numerically linearly dependent.

    Happens at (or near) exceptional points, where the superposition
    coefficients of the general solution are ill-defined.  Callers should fall
    back to direct numerical integration.
    """


class DivergenceError(RuntimeError):
    """State amplitudes crossed the overflow guard during propagation."""

    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.time = time


class GridAlignmentError(ValueError):
    """Two trajectories do not share an identical time grid."""
