"""Quantitative figure checkpoints behind the ``verify`` CLI command.

Each item reproduces one published observation: closed-form identities get
tight tolerances, values read off figures get ±10%.  Trajectory and scan
artifacts are written next to the report so the plots frontend can render
every panel.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import comparison, integrator, io, model_core, stability
from .model_core import SystemParams, effective_couplings
from .special_functions import bessel_j
from .state import StateVector
from .stability import ScanAxis

FIGURE_READ_RTOL = 0.10


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    artifacts: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed),
                "measured": self.measured, "artifacts": self.artifacts}


def _within(value, target, atol=None, rtol=None) -> bool:
    if atol is not None:
        return abs(value - target) <= atol
    return abs(value - target) <= rtol * abs(target)


def _evolve(params: SystemParams, init_index: int, t_end: float,
            stride: int = 8) -> "integrator.Trajectory":
    cfg = integrator.IntegrationConfig(t_end=t_end, sample_stride=stride)
    return integrator.propagate(params, StateVector.basis(init_index), cfg)


def check_bessel_values() -> CheckResult:
    cases = [
        ("J2(1.5)", bessel_j(2, 1.5), 0.232088, 1e-5),
        ("J0(1.5)", bessel_j(0, 1.5), 0.5118, 1e-3),
        ("|J0(3.8317)|", abs(bessel_j(0, 3.8317)), 0.40276, 1e-4),
        ("|J1(2.4048)|", abs(bessel_j(1, 2.4048)), 0.51915, 1e-4),
    ]
    measured = {name: {"value": v, "target": t, "atol": a} for name, v, t, a in cases}
    return CheckResult("bessel_values",
                       all(_within(v, t, atol=a) for _, v, t, a in cases), measured)


def check_spectrum_oracle(draws: int = 200, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        n = int(rng.integers(1, 4))
        p = SystemParams.from_drive_ratio(
            nu=1.0, lam=rng.uniform(0, 2), Omega=n * 50.0, omega=50.0,
            two_eps_over_omega=rng.uniform(0, 8),
            beta_l=rng.uniform(0, 1), beta_r=rng.uniform(0, 1))
        c = effective_couplings(p)
        analytic = np.array(model_core.quasienergy_spectrum(c, p.beta_l, p.beta_r))
        numeric = np.linalg.eigvals(model_core.effective_matrix(c, p.beta_l, p.beta_r))
        worst = max(worst, _multiset_distance(analytic, numeric))
    return CheckResult("spectrum_oracle", worst < 1e-9,
                       {"worst_pairing_distance": worst, "draws": draws})


def _multiset_distance(a, b, omega: float | None = None) -> float:
    """Minimal-pairing worst distance; with ``omega``, real parts compare on
    the Brillouin circle (Re = -omega/2 and Re = +omega/2 coincide)."""
    from scipy.optimize import linear_sum_assignment
    a, b = np.asarray(a), np.asarray(b)
    if omega is None:
        cost = np.abs(np.subtract.outer(a, b))
    else:
        dre = np.subtract.outer(a.real, b.real)
        dre = np.abs(np.remainder(dre + 0.5 * omega, omega) - 0.5 * omega)
        dim = np.abs(np.subtract.outer(a.imag, b.imag))
        cost = np.hypot(dre, dim)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def check_monodromy_agreement(points: int = 20, seed: int = 1) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(points):
        n = int(rng.integers(1, 3))
        p = SystemParams.from_drive_ratio(
            nu=1.0, lam=rng.uniform(0, 2), Omega=n * 50.0, omega=50.0,
            two_eps_over_omega=rng.uniform(0, 6),
            beta_l=(b := rng.uniform(0, 0.6)), beta_r=b)
        U = integrator.monodromy(p, integrator.IntegrationConfig(t_end=p.period))
        exact = integrator.numerical_quasienergies(U, p.omega)
        c = effective_couplings(p)
        analytic = model_core.canonical_exponents(
            model_core.quasienergy_spectrum(c, p.beta_l, p.beta_r), p.omega, n)
        worst = max(worst, _multiset_distance(np.array(analytic), exact, p.omega))
    return CheckResult("monodromy_agreement", worst < 0.05,
                       {"worst_pairing_distance": worst, "points": points})


def check_hermitian_norm() -> CheckResult:
    # Moderate drivings: at 512 steps/period the RK4 amplitude defect scales
    # like (||H|| tau/512)^6 per step, which stays below 1e-8 over 50 periods
    # for 2*eps/omega <= ~1.5 but not for the strongest in-scope drivings.
    cases = [(1, 1.0, 0.5), (2, 1.0, 1.0), (2, 0.5, 0.3)]
    worst = 0.0
    for n, ratio, lam in cases:
        p = SystemParams.from_drive_ratio(1.0, lam, n * 50.0, 50.0, ratio)
        traj = _evolve(p, 1, 50 * p.period, stride=1)
        worst = max(worst, float(np.max(np.abs(traj.total_probability - 1.0))))
    return CheckResult("hermitian_norm", worst < 1e-8,
                       {"worst_total_probability_drift": worst})


def check_fig1_triptych(out_dir: Path) -> CheckResult:
    measured = {}
    artifacts = []
    ok = True
    runs = [("fig1d", 0.2, 3.0, 0.5, "bounded"),
            ("fig1e", 0.45, 1.0, 1.0, "bounded"),
            ("fig1f", 0.6, 1.0, 0.5, "growing")]
    for name, beta, ratio, lam, expect in runs:
        p = SystemParams.from_drive_ratio(1.0, lam, 100.0, 50.0, ratio, beta, beta)
        traj = _evolve(p, 1, 50 * p.period)
        total = traj.total_probability
        io.write_trajectory_csv(traj, out_dir / f"{name}.csv")
        artifacts.append(f"{name}.csv")
        if expect == "bounded":
            good = bool(0.1 <= total.min() and total.max() <= 10.0)
            measured[name] = {"min_total": float(total.min()),
                              "max_total": float(total.max()), "expect": expect}
        else:
            good = bool(total.max() > 10.0)
            measured[name] = {"max_total": float(total.max()), "expect": expect}
        ok = ok and good
    return CheckResult("fig1_triptych", ok, measured, artifacts)


def check_boundary_identities() -> CheckResult:
    lams = np.linspace(0.0, 1.0, 2001)

    def even_boundary(lam, ratio):
        p = SystemParams.from_drive_ratio(1.0, lam, 100.0, 50.0, ratio)
        return stability.boundary_beta(effective_couplings(p))

    def odd_boundary(lam, ratio):
        p = SystemParams.from_drive_ratio(1.0, lam, 50.0, 50.0, ratio)
        return stability.boundary_beta(effective_couplings(p))

    even_vals = np.array([even_boundary(l, 1.5) for l in lams])
    width = float(even_vals.min())
    threshold = float(even_vals.max())
    beta_max_odd = odd_boundary(0.0, 3.8317)
    beta_max_odd_flip = odd_boundary(0.5, 2.4048)
    measured = {
        "even_width_at_1.5": {"value": width, "target": 0.232088, "atol": 1e-5},
        "even_threshold_at_1.5": {"value": threshold, "target": 0.5118, "atol": 1e-3},
        "odd_beta_max_nonflip": {"value": beta_max_odd, "target": 0.40276, "atol": 1e-4},
        "odd_beta_max_flip": {"value": beta_max_odd_flip, "target": 0.51915, "atol": 1e-4},
    }
    ok = all(_within(m["value"], m["target"], atol=m["atol"]) for m in measured.values())
    return CheckResult("boundary_identities", ok, measured)


def equilibrium_derivations() -> dict:
    """Gain-loss values implied by the equilibrium conditions at the checkpoint settings."""
    def even_sum(lam, ratio):
        p = SystemParams.from_drive_ratio(1.0, lam, 100.0, 50.0, ratio)
        c = effective_couplings(p)
        return c.j0**2 + c.j_plus**2

    def odd_couplings(lam, ratio):
        p = SystemParams.from_drive_ratio(1.0, lam, 50.0, 50.0, ratio)
        return effective_couplings(p)

    s_7 = even_sum(1.0 / 3.0, 3.0)
    c_8a = odd_couplings(1.0 / 3.0, 3.8317)
    c_8b = odd_couplings(0.5, 2.001)
    c_9 = odd_couplings(0.25, 4.0)
    gap_9 = (abs(c_9.j0) - abs(c_9.j_plus)) ** 2
    return {
        "fig7a_beta_r": s_7 / 0.2,
        "fig7c_beta_l": math.sqrt(s_7 / 3.0),
        "fig8a_beta_r": c_8a.j0**2 / 0.1,
        "fig8b_beta_l": abs(c_8b.j_plus) / math.sqrt(3.0),
        "fig9a_beta_r": gap_9 / 0.1,
        "fig9b_beta_r": gap_9 / 0.08,
    }


def check_equilibrium_derivations() -> CheckResult:
    targets = {
        "fig7a_beta_r": 0.9706,
        "fig7c_beta_l": 0.254427,
        "fig8a_beta_r": 0.405538,
        "fig8b_beta_l": 0.332971,
        "fig9a_beta_r": 0.54816,
        "fig9b_beta_r": 0.685209,
    }
    derived = equilibrium_derivations()
    measured = {k: {"value": derived[k], "target": targets[k], "atol": 1e-3}
                for k in targets}
    ok = all(_within(m["value"], m["target"], atol=m["atol"]) for m in measured.values())
    return CheckResult("equilibrium_derivations", ok, measured)


def _figure_runs():
    derived = equilibrium_derivations()
    bl_7c = derived["fig7c_beta_l"]
    bl_8b = derived["fig8b_beta_l"]
    return [
        # name, lam, Omega, ratio, beta_l, beta_r, init, target
        ("fig7a", 1 / 3, 100.0, 3.0, 0.2, derived["fig7a_beta_r"], 1, 0.4),
        ("fig7b", 1 / 3, 100.0, 3.0, 0.2, derived["fig7a_beta_r"], 2, 1.9),
        ("fig7c", 1 / 3, 100.0, 3.0, bl_7c, 3 * bl_7c, 1, 1.0),
        ("fig8a", 1 / 3, 50.0, 3.8317, 0.1, derived["fig8a_beta_r"], 1, 0.55),
        ("fig8b", 0.5, 50.0, 2.001, bl_8b, 3 * bl_8b, 1, 1.0),
        ("fig9a", 0.25, 50.0, 4.0, 0.1, derived["fig9a_beta_r"], 2, 0.88),
        ("fig9b", 0.25, 50.0, 4.0, 0.08, derived["fig9b_beta_r"], 2, 0.72),
    ]


def check_asymptotic_totals(out_dir: Path) -> CheckResult:
    measured = {}
    artifacts = []
    ok = True
    for name, lam, Omega, ratio, bl, br, init, target in _figure_runs():
        p = SystemParams.from_drive_ratio(1.0, lam, Omega, 50.0, ratio, bl, br)
        traj = _evolve(p, init, 40.0, stride=32)
        io.write_trajectory_csv(traj, out_dir / f"{name}.csv")
        artifacts.append(f"{name}.csv")
        est = comparison.asymptotic_total_probability(traj)
        good = _within(est.mean, target, rtol=FIGURE_READ_RTOL)
        measured[name] = {"value": est.mean, "std": est.std,
                          "target": target, "rtol": FIGURE_READ_RTOL}
        ok = ok and good
    return CheckResult("asymptotic_totals", ok, measured, artifacts)


def check_cdt_decay_split(out_dir: Path) -> CheckResult:
    p = SystemParams.from_drive_ratio(1.0, 1.0, 50.0, 50.0, 2.4048, 0.0, 0.4)
    decay = _evolve(p, 1, 15.0)
    freeze = _evolve(p, 2, 10 * p.period)
    io.write_trajectory_csv(decay, out_dir / "fig8c.csv")
    io.write_trajectory_csv(freeze, out_dir / "fig8d.csv")
    final_total = float(decay.total_probability[-1])
    min_p2 = float(freeze.probabilities[:, 1].min())
    ok = final_total < 0.01 and min_p2 >= 0.99
    return CheckResult("cdt_decay_split", ok,
                       {"decay_total_at_15": final_total, "freeze_min_P2": min_p2},
                       ["fig8c.csv", "fig8d.csv"])


def check_scan_topology(out_dir: Path) -> CheckResult:
    axis_lam = ScanAxis("lambda", 0.0, 2.0, 101)
    axis_ratio = ScanAxis("two_eps_over_omega", 0.0, 8.0, 201)

    even = stability.scan(
        SystemParams.from_drive_ratio(1.0, 0.0, 100.0, 50.0, 1.0, 0.2, 0.2),
        axis_lam, axis_ratio, "re_rho_even")
    odd = stability.scan(
        SystemParams.from_drive_ratio(1.0, 0.0, 50.0, 50.0, 1.0, 0.2, 0.2),
        axis_lam, axis_ratio, "re_rho_sum_odd")
    io.write_scan_json(even, out_dir / "fig1a.json")
    io.write_scan_json(odd, out_dir / "fig4a.json")

    even_spans = stability.spanning_stable_region(even, axis=0)
    odd_spans = stability.spanning_stable_region(odd, axis=0)
    return CheckResult("scan_topology", even_spans and not odd_spans,
                       {"even_n_spanning_region": even_spans,
                        "odd_n_spanning_region": odd_spans},
                       ["fig1a.json", "fig4a.json"])


def check_analytic_agreement(out_dir: Path) -> CheckResult:
    p = SystemParams.from_drive_ratio(1.0, 0.4, 100.0, 50.0, 2.405, 0.1, 0.1)
    exact = _evolve(p, 1, 10 * p.period)
    analytic = model_core.analytic_evolution(p, StateVector.basis(1), exact.times)
    io.write_trajectory_csv(exact, out_dir / "fig2e.csv")
    io.write_trajectory_csv(analytic, out_dir / "fig2e_analytic.csv")
    report = comparison.compare_trajectories(exact, analytic)
    return CheckResult("analytic_agreement",
                       report.max_abs_probability_dev < 0.05,
                       {"max_abs_probability_dev": report.max_abs_probability_dev,
                        "time_of_max": report.time_of_max},
                       ["fig2e.csv", "fig2e_analytic.csv"])


def run_figures_suite(out_dir) -> dict:
    """Run every checkpoint, write artifacts and report.json, return the report."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = [
        check_bessel_values(),
        check_spectrum_oracle(),
        check_monodromy_agreement(),
        check_hermitian_norm(),
        check_fig1_triptych(out_dir),
        check_boundary_identities(),
        check_equilibrium_derivations(),
        check_asymptotic_totals(out_dir),
        check_cdt_decay_split(out_dir),
        check_scan_topology(out_dir),
        check_analytic_agreement(out_dir),
    ]
    artifacts = [a for r in results for a in r.artifacts]
    report = {
        "kind": "verify-report",
        "suite": "figures",
        "items": [r.as_dict() for r in results],
        "artifacts": artifacts,
        "all_passed": all(r.passed for r in results),
    }
    io.write_json(report, out_dir / "report.json")
    return report
