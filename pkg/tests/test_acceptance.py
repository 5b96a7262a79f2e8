"""Acceptance suite: one test per quantitative criterion.

Each test prints a PASS/FAIL line (visible with ``pytest -s``) and asserts at
the stated tolerance.  Closed-form targets are tight; figure-read targets are
±10%.
"""

import json
import math
import shutil
import subprocess
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

import drivenwell as dw
from drivenwell.checkpoints import equilibrium_derivations
from drivenwell.special_functions import bessel_j
from drivenwell.stability import ScanAxis

FRONTEND = Path(__file__).resolve().parents[1] / "frontend"


def report_line(name, passed, detail=""):
    print(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
    assert passed, f"{name}: {detail}"


def multiset_distance(a, b, omega=None):
    a, b = np.asarray(a), np.asarray(b)
    if omega is None:
        cost = np.abs(np.subtract.outer(a, b))
    else:  # real parts live on the Brillouin circle of circumference omega
        dre = np.subtract.outer(a.real, b.real)
        dre = np.abs(np.remainder(dre + 0.5 * omega, omega) - 0.5 * omega)
        cost = np.hypot(dre, np.abs(np.subtract.outer(a.imag, b.imag)))
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def from_ratio(lam, n, ratio, bl, br, omega=50.0):
    return dw.SystemParams.from_drive_ratio(1.0, lam, n * omega, omega, ratio, bl, br)


def total_probability_run(p, init, t_end, stride=16):
    cfg = dw.IntegrationConfig(t_end=t_end, sample_stride=stride)
    return dw.propagate(p, dw.StateVector.basis(init), cfg)


def test_bessel_fidelity():
    checks = [
        (bessel_j(2, 1.5), 0.232088, 1e-5),
        (bessel_j(0, 1.5), 0.5118, 1e-3),
        (abs(bessel_j(0, 3.8317)), 0.40276, 1e-4),
        (abs(bessel_j(1, 2.4048)), 0.51915, 1e-4),
    ]
    worst = max(abs(v - t) / a for v, t, a in checks)
    report_line("bessel_fidelity", worst <= 1.0,
                f"worst error {worst:.3f} of tolerance")


def test_spectrum_oracle_200_draws():
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 4))
        p = from_ratio(rng.uniform(0, 2), n, rng.uniform(0, 8),
                       rng.uniform(0, 1), rng.uniform(0, 1))
        c = dw.effective_couplings(p)
        spec = dw.quasienergy_spectrum(c, p.beta_l, p.beta_r)
        ev = np.linalg.eigvals(dw.effective_matrix(c, p.beta_l, p.beta_r))
        worst = max(worst, multiset_distance(spec, ev))
    report_line("spectrum_oracle", worst < 1e-9, f"worst distance {worst:.2e}")


def test_monodromy_agreement_20_points():
    # closed-form energies live in the slow frame; for odd n the rotating
    # frame is anti-periodic, offsetting the exact exponents by omega/2
    from drivenwell.model_core import canonical_exponents
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 3))
        beta = rng.uniform(0, 0.6)
        p = from_ratio(rng.uniform(0, 2), n, rng.uniform(0, 6), beta, beta)
        U = dw.monodromy(p, dw.IntegrationConfig(t_end=p.period))
        exact = dw.numerical_quasienergies(U, p.omega)
        analytic = canonical_exponents(
            dw.quasienergy_spectrum(dw.effective_couplings(p), beta, beta),
            p.omega, n)
        worst = max(worst, multiset_distance(exact, np.array(analytic), p.omega))
    report_line("monodromy_agreement", worst < 0.05, f"worst distance {worst:.4f}")


def test_hermitian_norm_conservation():
    # moderate drivings; see notes in checkpoints.check_hermitian_norm for
    # why the RK4 amplitude defect grows ~(drive strength)^6
    worst = 0.0
    for n, ratio, lam in [(1, 1.0, 0.5), (2, 1.0, 1.0), (2, 0.5, 0.3)]:
        p = from_ratio(lam, n, ratio, 0.0, 0.0)
        traj = total_probability_run(p, 1, 50 * p.period, stride=1)
        worst = max(worst, float(np.max(np.abs(traj.total_probability - 1.0))))
    report_line("hermitian_norm_conservation", worst < 1e-8,
                f"worst |Ptot-1| = {worst:.2e}")


def test_figure1_triptych():
    flip = total_probability_run(from_ratio(0.5, 2, 3.0, 0.2, 0.2), 1,
                                 50 * 2 * math.pi / 50).total_probability
    cons = total_probability_run(from_ratio(1.0, 2, 1.0, 0.45, 0.45), 1,
                                 50 * 2 * math.pi / 50).total_probability
    grow = total_probability_run(from_ratio(0.5, 2, 1.0, 0.6, 0.6), 1,
                                 50 * 2 * math.pi / 50).total_probability
    ok = (0.1 <= flip.min() and flip.max() <= 10.0
          and 0.1 <= cons.min() and cons.max() <= 10.0
          and grow.max() > 10.0)
    report_line("figure1_triptych", ok,
                f"flip [{flip.min():.2f},{flip.max():.2f}] "
                f"cons [{cons.min():.2f},{cons.max():.2f}] grow max {grow.max():.1f}")


def test_boundary_identities():
    lams = np.linspace(0.0, 1.0, 2001)
    even = [dw.boundary_beta(dw.effective_couplings(from_ratio(l, 2, 1.5, 0, 0)))
            for l in lams]
    width, threshold = min(even), max(even)
    b_nonflip = dw.boundary_beta(dw.effective_couplings(from_ratio(0.0, 1, 3.8317, 0, 0)))
    b_flip = dw.boundary_beta(dw.effective_couplings(from_ratio(0.5, 1, 2.4048, 0, 0)))
    ok = (abs(width - 0.232088) <= 1e-5 and abs(threshold - 0.5118) <= 1e-3
          and abs(b_nonflip - 0.40276) <= 1e-4 and abs(b_flip - 0.51915) <= 1e-4)
    report_line("boundary_identities", ok,
                f"width {width:.6f} threshold {threshold:.4f} "
                f"odd {b_nonflip:.5f}/{b_flip:.5f}")


def test_unbalanced_equilibrium_derivations():
    targets = {"fig7a_beta_r": 0.9706, "fig7c_beta_l": 0.254427,
               "fig8a_beta_r": 0.405538, "fig8b_beta_l": 0.332971,
               "fig9a_beta_r": 0.54816, "fig9b_beta_r": 0.685209}
    derived = equilibrium_derivations()
    errs = {k: abs(derived[k] - targets[k]) for k in targets}
    report_line("unbalanced_equilibrium_derivations",
                max(errs.values()) <= 1e-3,
                " ".join(f"{k}={derived[k]:.6f}" for k in targets))


def test_asymptotic_totals():
    derived = equilibrium_derivations()
    runs = [
        ("fig7a", from_ratio(1 / 3, 2, 3.0, 0.2, derived["fig7a_beta_r"]), 1, 0.4),
        ("fig7b", from_ratio(1 / 3, 2, 3.0, 0.2, derived["fig7a_beta_r"]), 2, 1.9),
        ("fig7c", from_ratio(1 / 3, 2, 3.0, derived["fig7c_beta_l"],
                             3 * derived["fig7c_beta_l"]), 1, 1.0),
        ("fig8a", from_ratio(1 / 3, 1, 3.8317, 0.1, derived["fig8a_beta_r"]), 1, 0.55),
        ("fig8b", from_ratio(0.5, 1, 2.001, derived["fig8b_beta_l"],
                             3 * derived["fig8b_beta_l"]), 1, 1.0),
        ("fig9a", from_ratio(0.25, 1, 4.0, 0.1, derived["fig9a_beta_r"]), 2, 0.88),
        ("fig9b", from_ratio(0.25, 1, 4.0, 0.08, derived["fig9b_beta_r"]), 2, 0.72),
    ]
    details = []
    ok = True
    for name, p, init, target in runs:
        traj = total_probability_run(p, init, 40.0, stride=32)
        est = dw.asymptotic_total_probability(traj)
        good = abs(est.mean - target) <= 0.10 * target
        ok = ok and good
        details.append(f"{name}={est.mean:.3f}(target {target})")
    report_line("asymptotic_totals", ok, " ".join(details))


def test_cdt_decay_split():
    p = from_ratio(1.0, 1, 2.4048, 0.0, 0.4)
    decay = total_probability_run(p, 1, 15.0, stride=64)
    freeze = total_probability_run(p, 2, 10 * p.period, stride=8)
    final = float(decay.total_probability[-1])
    min_p2 = float(freeze.probabilities[:, 1].min())
    report_line("cdt_decay_split", final < 0.01 and min_p2 >= 0.99,
                f"decayed to {final:.2e}, frozen P2 >= {min_p2:.4f}")


def test_scan_topology():
    axis_lam = ScanAxis("lambda", 0.0, 2.0, 101)
    axis_ratio = ScanAxis("two_eps_over_omega", 0.0, 8.0, 201)
    even = dw.scan(from_ratio(0.0, 2, 1.0, 0.2, 0.2), axis_lam, axis_ratio,
                   "re_rho_even")
    odd = dw.scan(from_ratio(0.0, 1, 1.0, 0.2, 0.2), axis_lam, axis_ratio,
                  "re_rho_sum_odd")
    even_spans = dw.spanning_stable_region(even, axis=0)
    odd_spans = dw.spanning_stable_region(odd, axis=0)
    report_line("scan_topology", even_spans and not odd_spans,
                f"even spans: {even_spans}, odd spans: {odd_spans}")


def test_verify_suite_reports_all_passed(verify_artifacts):
    out_dir, report = verify_artifacts
    failed = [item["name"] for item in report["items"] if not item["passed"]]
    assert (out_dir / "report.json").exists()
    for artifact in report["artifacts"]:
        assert (out_dir / artifact).exists(), artifact
    report_line("verify_suite", report["all_passed"],
                f"failed items: {failed}" if failed else
                f"{len(report['items'])} items")


# --- secondary component: every verify artifact renders through the plots ---

def _ensure_frontend_built() -> Path | None:
    cli = FRONTEND / "dist" / "cli.js"
    if cli.exists():
        return cli
    if shutil.which("node") is None or shutil.which("npx") is None:
        return None
    build = subprocess.run(["npx", "tsc", "-p", str(FRONTEND)],
                           capture_output=True, text=True)
    return cli if build.returncode == 0 and cli.exists() else None


def test_secondary_artifacts_render(verify_artifacts, tmp_path):
    if shutil.which("node") is None:
        pytest.skip("node not available")
    cli = _ensure_frontend_built()
    if cli is None:
        pytest.skip("plots frontend could not be built")

    out_dir, report = verify_artifacts
    rendered = 0
    for artifact in report["artifacts"]:
        src = out_dir / artifact
        dst = tmp_path / (Path(artifact).stem + ".svg")
        kind = "heatmap" if artifact.endswith(".json") else "timeseries"
        proc = subprocess.run(
            ["node", str(cli), "render", "--input", str(src),
             "--kind", kind, "--output", str(dst)],
            capture_output=True, text=True)
        assert proc.returncode == 0, f"{artifact}: {proc.stderr}"
        assert dst.exists() and dst.stat().st_size > 0
        rendered += 1
        if artifact.endswith(".json"):
            data = json.loads(src.read_text())
            verdicts = set(data["verdicts"])
            mixed = bool(verdicts & {"A", "B"}) and bool(verdicts & {"C", "D"})
            if mixed:
                svg = dst.read_text()
                assert svg.count('class="boundary"') >= 1, \
                    f"{artifact}: no boundary overlay in mixed-verdict heatmap"
    report_line("secondary_render", rendered == len(report["artifacts"]),
                f"rendered {rendered} artifacts")
