"""Stability taxonomy, discriminants, equilibrium conditions, and 2-D scans.

The sign structure of Im(E_p) sorts the dynamics into four cases:

* A -- all Im(E_p) = 0: bounded, time-periodic probabilities,
* B -- some zero, the rest negative: total probability settles to a constant,
* C -- all negative: everything decays away,
* D -- any positive: exponential blow-up.

For balanced gain-loss the whole spectrum is controlled by one discriminant
per parity (rho for even resonance order, rho_+/rho_- for odd), which makes
dense parameter maps cheap: scans only ever evaluate closed forms.
"""

import cmath
import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import ParityError
from .model_core import (EffectiveCouplings, SystemParams, _with_axis_value,
                         effective_couplings, quasienergy_spectrum)

CLASSIFY_TOL = 1e-8

AXIS_NAMES = ("lambda", "two_eps_over_omega", "beta", "beta_l", "beta_r")
QUANTITIES = ("re_rho_even", "re_rho_sum_odd", "max_im_spectrum")

_BOUNDARY_REFINE_TOL = 1e-6


class StabilityCase(enum.Enum):
    A_STABLE_REAL = "A"
    B_STABLE_MIXED = "B"
    C_ALL_DECAY = "C"
    D_UNSTABLE = "D"

    @property
    def is_stable(self) -> bool:
        return self in (StabilityCase.A_STABLE_REAL, StabilityCase.B_STABLE_MIXED)


@dataclass(frozen=True)
class StabilityVerdict:
    case: StabilityCase
    max_im: float
    spectrum: tuple[complex, complex, complex, complex]


def classify(spectrum, tol: float = CLASSIFY_TOL) -> StabilityVerdict:
    """Case A/B/C/D from the imaginary parts of a four-element spectrum."""
    spectrum = tuple(complex(e) for e in spectrum)
    if len(spectrum) != 4:
        raise ValueError("spectrum must contain exactly four quasienergies")
    ims = [e.imag for e in spectrum]
    if not all(math.isfinite(e.real) and math.isfinite(e.imag) for e in spectrum):
        raise ValueError("spectrum must be finite")
    max_im = max(ims)
    if any(s > tol for s in ims):
        case = StabilityCase.D_UNSTABLE
    elif all(abs(s) <= tol for s in ims):
        case = StabilityCase.A_STABLE_REAL
    elif all(s < -tol for s in ims):
        case = StabilityCase.C_ALL_DECAY
    else:
        case = StabilityCase.B_STABLE_MIXED
    return StabilityVerdict(case, max_im, spectrum)


def _require_parity(c: EffectiveCouplings, even: bool):
    if c.is_even != even:
        want = "even" if even else "odd"
        raise ParityError(f"resonance order n = {c.n} is not {want}")


def rho_even(c: EffectiveCouplings, beta: float) -> complex:
    """Balanced even-n discriminant; Re(rho) = 0 marks Case-A stability."""
    _require_parity(c, even=True)
    return 2.0 * cmath.sqrt(beta**2 - c.j0**2 - c.j_plus**2)


def rho_odd(c: EffectiveCouplings, beta: float) -> tuple[complex, complex]:
    """Balanced odd-n pair (rho_+, rho_-); stable iff Re(rho_+ + rho_-) = 0."""
    _require_parity(c, even=False)
    rp = 2.0 * cmath.sqrt(beta**2 - (abs(c.j0) + abs(c.j_plus)) ** 2)
    rm = 2.0 * cmath.sqrt(beta**2 - (abs(c.j0) - abs(c.j_plus)) ** 2)
    return rp, rm


def rho_prime_even(c: EffectiveCouplings, beta_l: float, beta_r: float) -> complex:
    """Unbalanced even-n discriminant rho'."""
    _require_parity(c, even=True)
    return cmath.sqrt((beta_l + beta_r) ** 2 - 4.0 * c.j0**2 - 4.0 * c.j_plus**2)


def rho_prime_odd(c: EffectiveCouplings, beta_l: float, beta_r: float
                  ) -> tuple[complex, complex]:
    """Unbalanced odd-n pair (rho'_+, rho'_-)."""
    _require_parity(c, even=False)
    rp = cmath.sqrt((beta_l + beta_r) ** 2 - 4.0 * (abs(c.j0) + abs(c.j_plus)) ** 2)
    rm = cmath.sqrt((beta_l + beta_r) ** 2 - 4.0 * (abs(c.j0) - abs(c.j_plus)) ** 2)
    return rp, rm


def boundary_beta(c: EffectiveCouplings) -> float:
    """Largest balanced gain-loss strength compatible with Case-A stability.

    Even n: sqrt(j0^2 + j_plus^2).  Odd n: ||j0| - |j_plus||.  The stable
    region is beta strictly below the returned value.
    """
    if c.is_even:
        return math.hypot(c.j0, c.j_plus)
    return abs(abs(c.j0) - abs(c.j_plus))


@dataclass(frozen=True)
class EquilibriumCondition:
    """One tested parameter-balance condition and its simplified spectrum."""

    name: str
    satisfied: bool
    residual: float
    spectrum: tuple[complex, complex, complex, complex] | None


@dataclass(frozen=True)
class EquilibriumReport:
    conditions: tuple[EquilibriumCondition, ...]
    stable: bool
    verdict: StabilityVerdict | None

    def condition(self, name: str) -> EquilibriumCondition:
        for cond in self.conditions:
            if cond.name == name:
                return cond
        raise KeyError(name)


def equilibrium_check(p: SystemParams, tol: float = 1e-6) -> EquilibriumReport:
    """Test the unbalanced gain-loss equilibrium conditions at ``p``.

    Requires loss at least as strong as gain (beta_r >= beta_l).  Every
    condition family for the parity of n is evaluated; the overall verdict is
    stable iff some family holds within ``tol`` and its simplified spectrum
    classifies as Case A or B.
    """
    if p.beta_r < p.beta_l:
        raise ValueError("stability prerequisite violated: requires beta_r >= beta_l")
    c = effective_couplings(p)
    bl, br = p.beta_l, p.beta_r
    product = br * bl
    gap = 1j * (bl - br)

    conds: list[EquilibriumCondition] = []
    if c.is_even:
        res = abs(product - (c.j0**2 + c.j_plus**2))
        conds.append(EquilibriumCondition(
            "even_balance", res <= tol, res,
            (0.0, 0.0, gap, gap) if res <= tol else None))
    else:
        res_1i = max(abs(c.j_plus), abs(product - c.j0**2))
        conds.append(EquilibriumCondition(
            "cat1i_flip_channel_closed", res_1i <= tol, res_1i,
            (0.0, 0.0, gap, gap) if res_1i <= tol else None))

        res_1ii = max(abs(c.j0), abs(product - c.j_plus**2))
        conds.append(EquilibriumCondition(
            "cat1ii_conserving_channel_closed", res_1ii <= tol, res_1ii,
            (0.0, 0.0, gap, gap) if res_1ii <= tol else None))

        res_1iii = max(abs(c.j0), abs(c.j_plus), abs(bl))
        conds.append(EquilibriumCondition(
            "cat1iii_frozen_tunneling", res_1iii <= tol, res_1iii,
            (0.0, 0.0, -1j * br, -1j * br) if res_1iii <= tol else None))

        rp, _ = rho_prime_odd(c, bl, br)
        res_prod = abs((abs(c.j0) - abs(c.j_plus)) ** 2 - product)
        spec2 = (0.0, gap, 0.5j * (bl - br) - 0.5j * rp, 0.5j * (bl - br) + 0.5j * rp)

        ok_2i = res_prod <= tol and (bl + br) ** 2 < 4.0 * (abs(c.j0) + abs(c.j_plus)) ** 2
        conds.append(EquilibriumCondition(
            "cat2i_oscillatory_pair", ok_2i, res_prod, spec2 if ok_2i else None))

        ok_2ii = (res_prod <= tol and abs(rp.imag) <= tol
                  and 0.0 <= rp.real < br - bl)
        conds.append(EquilibriumCondition(
            "cat2ii_overdamped_pair", ok_2ii, res_prod, spec2 if ok_2ii else None))

    verdict = None
    for cond in conds:
        if cond.satisfied:
            verdict = classify(cond.spectrum)
            break
    stable = verdict is not None and verdict.case.is_stable
    return EquilibriumReport(tuple(conds), stable, verdict)


@dataclass(frozen=True)
class ScanAxis:
    """One swept parameter: name in AXIS_NAMES, inclusive range, point count."""

    name: str
    min: float
    max: float
    count: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(f"unknown axis {self.name!r}; expected one of {AXIS_NAMES}")
        if not (self.min < self.max):
            raise ValueError(f"axis {self.name}: need min < max")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"axis {self.name}: need count >= 2")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.count)

    @property
    def step(self) -> float:
        return (self.max - self.min) / (self.count - 1)


@dataclass(frozen=True, eq=False)
class ScanGrid:
    """A 2-D stability map: scalar values, verdicts, and boundary polylines.

    ``values[i, j]`` and ``verdicts[i, j]`` belong to
    (axis1.values[i], axis2.values[j]); polylines are ordered
    (axis1, axis2) pairs tracing the stable/unstable boundary.
    """

    axis1: ScanAxis
    axis2: ScanAxis
    quantity: str
    fixed: SystemParams
    values: np.ndarray
    verdicts: np.ndarray
    boundaries: tuple[np.ndarray, ...]

    def __post_init__(self):
        shape = (self.axis1.count, self.axis2.count)
        if self.values.shape != shape or self.verdicts.shape != shape:
            raise ValueError("grid matrices must match the axis counts")

    @property
    def stable_mask(self) -> np.ndarray:
        return np.array([[v.is_stable for v in row] for row in self.verdicts])


def _scan_discriminant(quantity: str, c: EffectiveCouplings, p: SystemParams,
                       classify_tol: float) -> float:
    """Signed distance to the stability boundary (negative = stable side)."""
    if quantity == "re_rho_even":
        return p.beta_l**2 - c.j0**2 - c.j_plus**2
    if quantity == "re_rho_sum_odd":
        return p.beta_l**2 - (abs(c.j0) - abs(c.j_plus)) ** 2
    spectrum = quasienergy_spectrum(c, p.beta_l, p.beta_r)
    return max(e.imag for e in spectrum) - classify_tol


def scan(template: SystemParams, axis1: ScanAxis, axis2: ScanAxis, quantity: str,
         *, classify_tol: float = CLASSIFY_TOL, threads: int | None = None) -> ScanGrid:
    """Evaluate a stability map over two parameter axes.

    Only closed forms are evaluated per cell, so even fine grids finish in
    well under a second.  Boundary polylines come from sign changes of the
    parity discriminant along grid lines, refined by bisection to 1e-6 in the
    swept parameter.
    """
    if quantity not in QUANTITIES:
        raise ValueError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")
    if axis1.name == axis2.name or {axis1.name, axis2.name} >= {"beta", "beta_l"} \
            or {axis1.name, axis2.name} >= {"beta", "beta_r"}:
        raise ValueError("scan axes must reference distinct parameters")
    n = template.resonance_order()
    if quantity == "re_rho_even":
        if n % 2:
            raise ParityError("re_rho_even requires even Omega/omega")
    elif quantity == "re_rho_sum_odd":
        if n % 2 == 0:
            raise ParityError("re_rho_sum_odd requires odd Omega/omega")
    balanced_quantity = quantity != "max_im_spectrum"
    axis_names = {axis1.name, axis2.name}
    if balanced_quantity:
        if axis_names & {"beta_l", "beta_r"}:
            raise ValueError(f"{quantity} needs balanced gain-loss; sweep 'beta' instead")
        if "beta" not in axis_names and template.beta_l != template.beta_r:
            raise ValueError(f"{quantity} needs balanced gain-loss in the template")

    v1 = axis1.values
    v2 = axis2.values
    values = np.empty((axis1.count, axis2.count))
    disc = np.empty_like(values)
    verdicts = np.empty((axis1.count, axis2.count), dtype=object)

    def eval_row(i: int):
        row_p = _with_axis_value(template, axis1.name, float(v1[i]))
        for j in range(axis2.count):
            p = _with_axis_value(row_p, axis2.name, float(v2[j]))
            c = effective_couplings(p)
            if quantity == "re_rho_even":
                values[i, j] = rho_even(c, p.beta_l).real
            elif quantity == "re_rho_sum_odd":
                rp, rm = rho_odd(c, p.beta_l)
                values[i, j] = (rp + rm).real
            else:
                values[i, j] = max(e.imag for e in quasienergy_spectrum(c, p.beta_l, p.beta_r))
            verdicts[i, j] = classify(quasienergy_spectrum(c, p.beta_l, p.beta_r),
                                      classify_tol).case
            disc[i, j] = _scan_discriminant(quantity, c, p, classify_tol)

    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(eval_row, range(axis1.count)))
    else:
        for i in range(axis1.count):
            eval_row(i)

    boundaries = _extract_boundaries(template, axis1, axis2, quantity,
                                     classify_tol, disc)
    return ScanGrid(axis1, axis2, quantity, template, values, verdicts, boundaries)


def _bisect_crossing(g, lo: float, hi: float) -> float:
    """One sign change of g in [lo, hi], bisected to _BOUNDARY_REFINE_TOL."""
    glo = g(lo)
    for _ in range(200):
        if hi - lo < _BOUNDARY_REFINE_TOL:
            break
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (glo < 0) == (gm < 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _extract_boundaries(template, axis1, axis2, quantity, classify_tol, disc):
    def g_factory(fixed_axis_name, fixed_value, swept_name):
        base = _with_axis_value(template, fixed_axis_name, fixed_value)

        def g(s):
            p = _with_axis_value(base, swept_name, s)
            return _scan_discriminant(quantity, effective_couplings(p), p, classify_tol)
        return g

    v1, v2 = axis1.values, axis2.values
    pts: list[tuple[float, float]] = []
    sign = np.sign(disc)
    # sweep along axis2 at fixed axis1, then the transpose
    for i in range(axis1.count):
        g = None
        for j in range(axis2.count - 1):
            if sign[i, j] * sign[i, j + 1] < 0:
                g = g or g_factory(axis1.name, float(v1[i]), axis2.name)
                s = _bisect_crossing(g, float(v2[j]), float(v2[j + 1]))
                pts.append((float(v1[i]), s))
    for j in range(axis2.count):
        g = None
        for i in range(axis1.count - 1):
            if sign[i, j] * sign[i + 1, j] < 0:
                g = g or g_factory(axis2.name, float(v2[j]), axis1.name)
                s = _bisect_crossing(g, float(v1[i]), float(v1[i + 1]))
                pts.append((s, float(v2[j])))
    return _chain_points(pts, axis1.step, axis2.step)


def _chain_points(pts, step1, step2) -> tuple[np.ndarray, ...]:
    """Greedy nearest-neighbor chaining of boundary points into polylines."""
    if not pts:
        return ()
    scaled = [(x / step1, y / step2) for x, y in pts]
    unused = sorted(range(len(pts)), key=lambda k: scaled[k])
    used = [False] * len(pts)
    reach2 = 1.6**2
    polylines = []
    for seed in unused:
        if used[seed]:
            continue
        used[seed] = True
        chain = [seed]
        for grow_at_end in (True, False):
            while True:
                anchor = scaled[chain[-1] if grow_at_end else chain[0]]
                best, best_d2 = None, reach2
                for k in unused:
                    if used[k]:
                        continue
                    d2 = (scaled[k][0] - anchor[0])**2 + (scaled[k][1] - anchor[1])**2
                    if d2 < best_d2:
                        best, best_d2 = k, d2
                if best is None:
                    break
                used[best] = True
                if grow_at_end:
                    chain.append(best)
                else:
                    chain.insert(0, best)
        polylines.append(np.array([pts[k] for k in chain]))
    return tuple(polylines)


def spanning_stable_region(grid: ScanGrid, axis: int = 0) -> bool:
    """Whether one 4-connected stable component touches every index of ``axis``."""
    labels, n_labels = ndimage.label(grid.stable_mask)
    full = grid.values.shape[axis]
    for lab in range(1, n_labels + 1):
        if np.unique(np.nonzero(labels == lab)[axis]).size == full:
            return True
    return False
