"""Exact propagation of the driven four-state system.

Fixed-step classical RK4 on the full time-dependent equations of motion.  A
fixed step of tau/steps_per_period keeps one-period propagation (and hence
the monodromy construction) exactly period-aligned; the smooth, mildly
oscillatory right-hand side needs no adaptivity at the in-scope parameter
ranges.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError
from .model_core import SystemParams
from .state import StateVector, Trajectory

OVERFLOW_GUARD = 1.0e150


@dataclass(frozen=True)
class IntegrationConfig:
    """Fixed-step integration plan.

    512 steps per period resolves drivings up to epsilon ~ 200 at omega = 50
    with per-step phase error well below 1e-6.
    """

    t_end: float
    steps_per_period: int = 512
    sample_stride: int = 1

    def __post_init__(self):
        if not math.isfinite(self.t_end) or self.t_end <= 0:
            raise ValueError("t_end must be positive and finite")
        if int(self.steps_per_period) != self.steps_per_period or self.steps_per_period < 64:
            raise ValueError("steps_per_period must be an integer >= 64")
        if int(self.sample_stride) != self.sample_stride or self.sample_stride < 1:
            raise ValueError("sample_stride must be an integer >= 1")


def rhs(p: SystemParams, t: float, a) -> np.ndarray:
    """Time derivative da/dt of the four amplitudes at time t."""
    a = np.asarray(a, dtype=complex).reshape(4)
    jc = p.nu * math.cos(math.pi * p.lam)
    js = p.nu * math.sin(math.pi * p.lam)
    drive = p.epsilon * math.cos(p.omega * t)
    half = 0.5 * p.Omega
    return -1j * np.array([
        -jc * a[2] - js * a[1] + (half - drive - 1j * p.beta_r) * a[0],
        -jc * a[3] - js * a[0] + (-half + drive + 1j * p.beta_l) * a[1],
        -jc * a[0] + js * a[3] + (half + drive + 1j * p.beta_l) * a[2],
        -jc * a[1] + js * a[2] + (-half - drive - 1j * p.beta_r) * a[3],
    ])


def propagate(p: SystemParams, initial: StateVector, cfg: IntegrationConfig) -> Trajectory:
    """RK4 propagation from ``initial.t`` to within one step of ``cfg.t_end``.

    The trajectory is sampled every ``sample_stride`` steps (final step always
    included).  Raises DivergenceError if any amplitude magnitude crosses
    1e150, which only happens deep in unstable parameter regions.
    """
    tau = p.period
    h = tau / cfg.steps_per_period
    t0 = float(initial.t)
    n_steps = max(1, round((cfg.t_end - t0) / h))
    if n_steps * h + t0 <= t0:
        raise ValueError("t_end must lie after the initial time")

    # Scalar arithmetic: a factor of a few faster than 4-vector numpy at this
    # system size, which matters for the long Case-B convergence runs.
    jc = p.nu * math.cos(math.pi * p.lam)
    js = p.nu * math.sin(math.pi * p.lam)
    half = 0.5 * p.Omega
    eps = p.epsilon
    om = p.omega
    d_r = -1j * p.beta_r
    d_l = 1j * p.beta_l

    def f(t, a1, a2, a3, a4):
        drive = eps * math.cos(om * t)
        return (
            -1j * (-jc * a3 - js * a2 + (half - drive + d_r) * a1),
            -1j * (-jc * a4 - js * a1 + (-half + drive + d_l) * a2),
            -1j * (-jc * a1 + js * a4 + (half + drive + d_l) * a3),
            -1j * (-jc * a2 + js * a3 + (-half - drive + d_r) * a4),
        )

    a1, a2, a3, a4 = (complex(z) for z in initial.a)
    times = [t0]
    samples = [(a1, a2, a3, a4)]
    h2 = 0.5 * h
    h6 = h / 6.0

    t = t0
    for step in range(1, n_steps + 1):
        b1, b2, b3, b4 = f(t, a1, a2, a3, a4)
        c1, c2, c3, c4 = f(t + h2, a1 + h2 * b1, a2 + h2 * b2, a3 + h2 * b3, a4 + h2 * b4)
        d1, d2, d3, d4 = f(t + h2, a1 + h2 * c1, a2 + h2 * c2, a3 + h2 * c3, a4 + h2 * c4)
        e1, e2, e3, e4 = f(t + h, a1 + h * d1, a2 + h * d2, a3 + h * d3, a4 + h * d4)
        a1 += h6 * (b1 + 2.0 * (c1 + d1) + e1)
        a2 += h6 * (b2 + 2.0 * (c2 + d2) + e2)
        a3 += h6 * (b3 + 2.0 * (c3 + d3) + e3)
        a4 += h6 * (b4 + 2.0 * (c4 + d4) + e4)
        t = t0 + step * h
        if abs(a1) > OVERFLOW_GUARD or abs(a2) > OVERFLOW_GUARD \
                or abs(a3) > OVERFLOW_GUARD or abs(a4) > OVERFLOW_GUARD:
            raise DivergenceError(f"amplitudes exceeded {OVERFLOW_GUARD:g} at t = {t:.6g}", t)
        if step % cfg.sample_stride == 0 or step == n_steps:
            times.append(t)
            samples.append((a1, a2, a3, a4))

    return Trajectory(np.array(times), np.array(samples, dtype=complex))


def monodromy(p: SystemParams, cfg: IntegrationConfig) -> np.ndarray:
    """One-period propagator U(tau) of the exact driven model.

    Column q solves the equations of motion over one driving period from the
    q-th basis state at t = 0.
    """
    tau = p.period
    one_period = IntegrationConfig(t_end=tau,
                                   steps_per_period=cfg.steps_per_period,
                                   sample_stride=cfg.steps_per_period)
    cols = []
    for q in range(1, 5):
        traj = propagate(p, StateVector.basis(q), one_period)
        cols.append(traj.amplitudes[-1])
    return np.column_stack(cols)


def numerical_quasienergies(U: np.ndarray, omega: float) -> np.ndarray:
    """Quasienergies E_p = (i/tau) log mu_p from the monodromy eigenvalues.

    The principal logarithm puts Re E in the Brillouin zone (-omega/2,
    omega/2]; Im E is branch-free.
    """
    U = np.asarray(U, dtype=complex)
    mu = np.linalg.eigvals(U)
    if np.any(np.abs(mu) == 0.0) or not np.all(np.isfinite(mu)):
        raise np.linalg.LinAlgError("singular monodromy matrix")
    tau = 2.0 * math.pi / omega
    out = []
    for m in mu:
        e = 1j * cmath.log(m) / tau
        if e.real <= -0.5 * omega:
            e += omega
        out.append(e)
    out.sort(key=lambda e: (-e.imag, e.real))
    return np.array(out)
