"""Deterministic file formats for trajectories, spectra, and scan grids.

All numbers are written with 12 significant digits, '\\n' line endings, and
UTF-8, so identical inputs give byte-identical files.  The plots frontend
consumes exactly these schemas.
"""

import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .model_core import SystemParams
from .stability import ScanGrid, StabilityVerdict
from .state import Trajectory

TRAJECTORY_COLUMNS = ("t", "P1", "P2", "P3", "P4", "Ptot",
                      "re_a1", "im_a1", "re_a2", "im_a2",
                      "re_a3", "im_a3", "re_a4", "im_a4")


def fmt(x: float) -> str:
    return f"{float(x):.12g}"


def _round12(obj):
    """Recursively clamp floats to 12 significant digits for stable JSON."""
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def write_json(obj, path) -> None:
    text = json.dumps(_round12(obj), indent=1)
    Path(path).write_text(text + "\n", encoding="utf-8", newline="\n")


def trajectory_rows(traj: Trajectory):
    probs = traj.probabilities
    for i in range(len(traj)):
        a = traj.amplitudes[i]
        row = [traj.times[i], *probs[i]]
        for k in range(4):
            row += [a[k].real, a[k].imag]
        yield row


def write_trajectory_csv(traj: Trajectory, path) -> None:
    lines = [",".join(TRAJECTORY_COLUMNS)]
    lines += [",".join(fmt(v) for v in row) for row in trajectory_rows(traj)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_trajectory_csv(path) -> Trajectory:
    lines = Path(path).read_text(encoding="utf-8").strip().split("\n")
    header = tuple(lines[0].split(","))
    if header != TRAJECTORY_COLUMNS:
        raise ValueError(f"unexpected trajectory header: {lines[0]!r}")
    times, amps = [], []
    for line in lines[1:]:
        vals = [float(v) for v in line.split(",")]
        times.append(vals[0])
        amps.append([complex(vals[6 + 2 * k], vals[7 + 2 * k]) for k in range(4)])
    return Trajectory(np.array(times), np.array(amps, dtype=complex))


def params_dict(p: SystemParams) -> dict:
    return asdict(p)


def _complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def verdict_dict(v: StabilityVerdict) -> dict:
    return {
        "case": v.case.value,
        "max_im": v.max_im,
        "spectrum": [_complex_pair(e) for e in v.spectrum],
    }


def quasienergy_report(p: SystemParams, couplings, modes, verdict) -> dict:
    return {
        "kind": "quasienergy",
        "params": params_dict(p),
        "couplings": {"j0": couplings.j0, "j_plus": couplings.j_plus,
                      "j_minus": couplings.j_minus, "n": couplings.n},
        "modes": [{
            "index": m.index,
            "e": _complex_pair(m.e),
            "vec": [_complex_pair(z) for z in m.vec],
        } for m in modes],
        "verdict": verdict_dict(verdict),
    }


def scan_dict(grid: ScanGrid) -> dict:
    return {
        "kind": "scan",
        "quantity": grid.quantity,
        "fixed": params_dict(grid.fixed),
        "axis1": asdict(grid.axis1),
        "axis2": asdict(grid.axis2),
        "values": [float(v) for v in grid.values.ravel()],  # row-major
        "verdicts": [v.value for row in grid.verdicts for v in row],
        "boundaries": [[[float(x), float(y)] for x, y in line]
                       for line in grid.boundaries],
    }


def write_scan_json(grid: ScanGrid, path) -> None:
    write_json(scan_dict(grid), path)


def write_boundary_csv(rows, path) -> None:
    """rows: iterable of (swept_value, boundary_beta)."""
    lines = ["swept_param,boundary_beta"]
    lines += [f"{fmt(s)},{fmt(b)}" for s, b in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
