"""Model parameters, effective couplings, and closed-form Floquet solutions.

A single spin-orbit coupled boson in a driven two-site trap has four Fock
amplitudes (see :mod:`drivenwell.state` for the basis ordering).  The left
well gains probability at rate ``beta_l``, the right well loses it at
``beta_r``, and the wells are shaken sinusoidally with amplitude ``epsilon``
and frequency ``omega``.

At multiphoton resonance, ``Omega = n * omega``, the cycle-averaged dynamics
reduces to a static four-state model.  Its two tunneling channels are
renormalized by Bessel factors: the spin-conserving rate ``j0`` and the
spin-flipping rates ``j_plus`` / ``j_minus``.  The quasienergy spectrum of
that static model is available in closed form and, away from coupling
degeneracies, so are the eigenvectors.  Generic initial conditions evolve as
a superposition of the four Floquet modes, which is what
:func:`analytic_evolution` evaluates.
"""

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DegeneracyError, ResonanceError
from .special_functions import bessel_j
from .state import StateVector, Trajectory

RESONANCE_TOL = 1e-9

# Below these scales the closed-form eigenvector denominators are treated as
# vanishing and the numerical eigendecomposition is used instead.
_COUPLING_EPS = 1e-12
_EIGVEC_RESIDUAL = 1e-9


@dataclass(frozen=True)
class SystemParams:
    """The seven dimensionless model parameters (units of omega_0).

    ``lam`` is the spin-orbit mixing angle in units of pi: tunneling rotates
    the spin by pi*lam about y.
    """

    nu: float
    lam: float
    Omega: float
    omega: float
    epsilon: float
    beta_l: float = 0.0
    beta_r: float = 0.0

    def __post_init__(self):
        vals = (self.nu, self.lam, self.Omega, self.omega, self.epsilon,
                self.beta_l, self.beta_r)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("parameters must be finite")
        if self.omega <= 0:
            raise ValueError("driving frequency omega must be positive")
        if self.nu < 0:
            raise ValueError("tunneling rate nu must be non-negative")
        if self.beta_l < 0 or self.beta_r < 0:
            raise ValueError("gain/loss coefficients must be non-negative")

    @classmethod
    def from_drive_ratio(cls, nu, lam, Omega, omega, two_eps_over_omega,
                         beta_l=0.0, beta_r=0.0) -> "SystemParams":
        """Build params from the natural figure axis 2*epsilon/omega."""
        return cls(nu, lam, Omega, omega, 0.5 * two_eps_over_omega * omega,
                   beta_l, beta_r)

    @property
    def two_eps_over_omega(self) -> float:
        return 2.0 * self.epsilon / self.omega

    @property
    def period(self) -> float:
        """Driving period tau = 2*pi/omega."""
        return 2.0 * math.pi / self.omega

    @property
    def balanced(self) -> bool:
        return self.beta_l == self.beta_r

    def resonance_order(self, tol: float = RESONANCE_TOL) -> int:
        """Integer n with Omega = n*omega, or ResonanceError if off-resonant."""
        ratio = self.Omega / self.omega
        n = round(ratio)
        if abs(ratio - n) > tol:
            raise ResonanceError(
                f"Omega/omega = {ratio:.12g} is not an integer within {tol:g}")
        return int(n)


@dataclass(frozen=True)
class EffectiveCouplings:
    """Cycle-averaged tunneling rates of the static model.

    ``j_plus`` couples the spin-flip pair (1,2); ``j_minus`` couples (3,4).
    Bessel parity ties them together: equal for even resonance order n,
    opposite in sign for odd n.
    """

    j0: float
    j_plus: float
    j_minus: float
    n: int

    @property
    def is_even(self) -> bool:
        return self.n % 2 == 0


def effective_couplings(p: SystemParams, tol: float = RESONANCE_TOL) -> EffectiveCouplings:
    """Effective couplings j0, j_{+n}, j_{-n} at resonance order n."""
    n = p.resonance_order(tol)
    x = p.two_eps_over_omega
    pl = math.pi * p.lam
    return EffectiveCouplings(
        j0=p.nu * math.cos(pl) * bessel_j(0, x),
        j_plus=p.nu * math.sin(pl) * bessel_j(n, x),
        j_minus=p.nu * math.sin(pl) * bessel_j(-n, x),
        n=n,
    )


def effective_matrix(c: EffectiveCouplings, beta_l: float, beta_r: float) -> np.ndarray:
    """Non-Hermitian generator M of the static model, i db/dt = M b."""
    return np.array([
        [-1j * beta_r, -c.j_plus, -c.j0, 0.0],
        [-c.j_plus, 1j * beta_l, 0.0, -c.j0],
        [-c.j0, 0.0, 1j * beta_l, c.j_minus],
        [0.0, -c.j0, c.j_minus, -1j * beta_r],
    ], dtype=complex)


def _zetas(c: EffectiveCouplings, beta_l: float, beta_r: float) -> tuple[complex, complex]:
    """Principal-branch discriminant roots zeta_+ and zeta_-."""
    base = (beta_r + beta_l) ** 2 - 4.0 * c.j0**2 - 4.0 * c.j_plus**2
    cross = 4.0 * abs(c.j0 * (c.j_plus - c.j_minus))
    return cmath.sqrt(base + cross), cmath.sqrt(base - cross)


def quasienergy_spectrum(c: EffectiveCouplings, beta_l: float, beta_r: float
                         ) -> tuple[complex, complex, complex, complex]:
    """The four closed-form quasienergies (E_1, E_2, E_3, E_4)."""
    zp, zm = _zetas(c, beta_l, beta_r)
    d = beta_l - beta_r
    return (0.5j * (d + zp), 0.5j * (d - zp), 0.5j * (d - zm), 0.5j * (d + zm))


def canonical_exponents(spectrum, omega: float, n: int) -> tuple[complex, ...]:
    """Map effective-model quasienergies onto principal Floquet exponents.

    The rotating-frame phases advance by n*pi per driving period, so for odd
    resonance order they are anti-periodic and the exact one-period
    propagator picks up an extra factor exp(-i*omega*tau/2) relative to the
    slow frame.  Real parts are folded into (-omega/2, omega/2].
    """
    shift = 0.5 * omega * (n % 2)
    out = []
    for e in spectrum:
        re = math.remainder(e.real + shift, omega)
        if re <= -0.5 * omega:
            re += omega
        out.append(complex(re, e.imag))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class QuasienergyMode:
    """One quasienergy with its (unnormalized) eigenvector of the static model."""

    e: complex
    vec: np.ndarray
    index: int

    def __post_init__(self):
        object.__setattr__(self, "vec", np.asarray(self.vec, dtype=complex).reshape(4))


def _closed_form_vectors(c: EffectiveCouplings, beta_l: float, beta_r: float):
    """Eigenvectors from the analytic solution, valid away from degeneracies.

    Returns None when any denominator scale vanishes (even n, j0 = 0, or
    |j0| = |j_plus|); callers then fall back to the numerical route.
    """
    g = c.j_plus - c.j_minus
    q = c.j0**2 + c.j_plus * c.j_minus
    if abs(g) <= _COUPLING_EPS or abs(c.j0) <= _COUPLING_EPS or abs(q) <= _COUPLING_EPS:
        return None
    w = abs(c.j0 * g)
    eta = w / (c.j0 * g)
    alpha_p = (g**2 + 2.0 * w) / (4.0 * g * q)
    alpha_m = (g**2 - 2.0 * w) / (4.0 * g * q)
    kappa_p = (c.j0**2 * g + c.j_plus * w) / (2.0 * c.j0 * g * q)
    kappa_m = (c.j0**2 * g - c.j_plus * w) / (2.0 * c.j0 * g * q)
    zp, zm = _zetas(c, beta_l, beta_r)
    s = beta_r + beta_l
    return [
        np.array([1.0, 1j * alpha_p * (s + zp), -1j * kappa_p * (s + zp), -eta]),
        np.array([1.0, -1j * alpha_p * (-s + zp), 1j * kappa_p * (-s + zp), -eta]),
        np.array([1.0, -1j * alpha_m * (-s + zm), 1j * kappa_m * (-s + zm), eta]),
        np.array([1.0, 1j * alpha_m * (s + zm), -1j * kappa_m * (s + zm), eta]),
    ]


def _numerical_vectors(matrix: np.ndarray, energies) -> list[np.ndarray]:
    """Eigenvectors matched one-to-one to the analytic energies."""
    ev, vecs = np.linalg.eig(matrix)
    cost = np.abs(np.subtract.outer(np.asarray(energies), ev))
    rows, cols = linear_sum_assignment(cost)
    out = [None] * 4
    for r, col in zip(rows, cols):
        out[r] = vecs[:, col]
    return out


def _normalize_largest(v: np.ndarray) -> np.ndarray:
    return v / v[int(np.argmax(np.abs(v)))]


def quasienergies(c: EffectiveCouplings, beta_l: float, beta_r: float
                  ) -> tuple[QuasienergyMode, ...]:
    """All four Floquet modes of the static model.

    Energies always come from the closed form.  Eigenvectors use the analytic
    expressions when their denominators are safely nonzero and the residual
    check passes, otherwise a numerical eigendecomposition matched to the
    analytic energies.  Modes are sorted by (Im E descending, Re E ascending);
    ``index`` keeps the construction label p = 1..4.
    """
    energies = quasienergy_spectrum(c, beta_l, beta_r)
    matrix = effective_matrix(c, beta_l, beta_r)
    scale = np.linalg.norm(matrix)

    vecs = _closed_form_vectors(c, beta_l, beta_r)
    if vecs is not None:
        for e, v in zip(energies, vecs):
            if np.linalg.norm(matrix @ v - e * v) > max(_EIGVEC_RESIDUAL * scale, 1e-12) * np.linalg.norm(v):
                vecs = None
                break
    if vecs is None:
        vecs = _numerical_vectors(matrix, energies)

    modes = [QuasienergyMode(e, _normalize_largest(v), p + 1)
             for p, (e, v) in enumerate(zip(energies, vecs))]
    modes.sort(key=lambda m: (-m.e.imag, m.e.real))
    return tuple(modes)


def phase_exponents(p: SystemParams, t: float) -> np.ndarray:
    """Accumulated phases of the rotating-frame transformation at time t.

    The driving integral carries zero constant at t = 0, so the fast and slow
    amplitudes coincide there.
    """
    s = (p.epsilon / p.omega) * math.sin(p.omega * t)
    half = 0.5 * p.Omega * t
    return np.array([half - s, -half + s, half + s, -half - s])


def floquet_state_amplitudes(mode: QuasienergyMode, p: SystemParams, t: float) -> StateVector:
    """Fast-frame envelope of one Floquet state at time t.

    The secular factor exp(-i E t) is left out; callers apply it when
    composing superpositions.
    """
    return StateVector(mode.vec * np.exp(-1j * phase_exponents(p, t)), t)


@dataclass(frozen=True, eq=False)
class FloquetSolutionSet:
    """Superposition coefficients over the four Floquet modes."""

    modes: tuple[QuasienergyMode, ...]
    lambdas: np.ndarray

    def slow_amplitudes(self, t: float) -> np.ndarray:
        """The slow amplitudes d_k(t) of the superposition."""
        phases = np.exp(np.array([-1j * m.e * t for m in self.modes]))
        basis = np.column_stack([m.vec for m in self.modes])
        return basis @ (self.lambdas * phases)


def non_floquet_solution(modes, initial: StateVector) -> FloquetSolutionSet:
    """Coefficients Lambda_p reproducing ``initial`` at t = 0.

    Raises DegeneracyError when the eigenvector matrix is numerically
    singular; integrate numerically in that case.  Rounding splits a true
    exceptional point into nearly parallel eigenvectors with a finite but
    useless condition number, so the reconstruction residual is checked as
    well as the conditioning.
    """
    modes = tuple(modes)
    basis = np.column_stack([m.vec for m in modes])
    cond = np.linalg.cond(basis)
    if not np.isfinite(cond) or cond >= 1e12:
        raise DegeneracyError(
            "Floquet eigenvectors are (nearly) linearly dependent; "
            "use the numerical integrator instead")
    lambdas = np.linalg.solve(basis, initial.a)
    scale = max(1.0, float(np.linalg.norm(initial.a)))
    if np.linalg.norm(basis @ lambdas - initial.a) > 1e-10 * scale:
        raise DegeneracyError(
            "superposition coefficients do not reproduce the initial state "
            "(degenerate or exceptional point); use the numerical integrator instead")
    return FloquetSolutionSet(modes, lambdas)


def analytic_evolution(p: SystemParams, initial: StateVector, times) -> Trajectory:
    """Evolution of an arbitrary initial state via the Floquet superposition.

    Valid in the high-frequency regime; away from exceptional points it
    tracks the exact dynamics up to corrections of order nu/omega.
    """
    if initial.t != 0.0:
        raise ValueError("analytic evolution requires the initial state at t = 0")
    times = np.asarray(times, dtype=float).reshape(-1)
    c = effective_couplings(p)
    modes = quasienergies(c, p.beta_l, p.beta_r)
    sol = non_floquet_solution(modes, initial)

    energies = np.array([m.e for m in modes])
    basis = np.column_stack([m.vec for m in modes])
    slow = basis @ (sol.lambdas[:, None] * np.exp(-1j * np.outer(energies, times)))

    s = (p.epsilon / p.omega) * np.sin(p.omega * times)
    half = 0.5 * p.Omega * times
    phases = np.vstack([half - s, -half + s, half + s, -half - s])
    return Trajectory(times, (slow * np.exp(-1j * phases)).T)


def _with_axis_value(p: SystemParams, name: str, value: float) -> SystemParams:
    """Copy of ``p`` with one named scan parameter replaced."""
    if name == "lambda":
        return replace(p, lam=value)
    if name == "two_eps_over_omega":
        return replace(p, epsilon=0.5 * value * p.omega)
    if name == "beta":
        return replace(p, beta_l=value, beta_r=value)
    if name == "beta_l":
        return replace(p, beta_l=value)
    if name == "beta_r":
        return replace(p, beta_r=value)
    raise ValueError(f"unknown scan parameter {name!r}")
