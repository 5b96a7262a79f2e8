"""Floquet stability analysis of a driven gain-loss spin-orbit double well."""

from .comparison import (AsymptoticEstimate, DeviationReport,
                         asymptotic_total_probability, compare_trajectories)
from .errors import (DegeneracyError, DivergenceError, GridAlignmentError,
                     ParityError, ResonanceError)
from .integrator import (IntegrationConfig, monodromy, numerical_quasienergies,
                         propagate, rhs)
from .model_core import (EffectiveCouplings, FloquetSolutionSet,
                         QuasienergyMode, SystemParams, analytic_evolution,
                         canonical_exponents, effective_couplings,
                         effective_matrix, floquet_state_amplitudes,
                         non_floquet_solution, quasienergies,
                         quasienergy_spectrum)
from .special_functions import bessel_j
from .stability import (EquilibriumReport, ScanAxis, ScanGrid, StabilityCase,
                        StabilityVerdict, boundary_beta, classify,
                        equilibrium_check, rho_even, rho_odd, scan,
                        spanning_stable_region)
from .state import StateVector, Trajectory

__version__ = "0.1.0"

__all__ = [
    "AsymptoticEstimate", "DeviationReport", "DegeneracyError",
    "DivergenceError", "EffectiveCouplings", "EquilibriumReport",
    "FloquetSolutionSet", "GridAlignmentError", "IntegrationConfig",
    "ParityError", "QuasienergyMode", "ResonanceError", "ScanAxis", "ScanGrid",
    "StabilityCase", "StabilityVerdict", "StateVector", "SystemParams",
    "Trajectory", "analytic_evolution", "asymptotic_total_probability",
    "bessel_j", "boundary_beta", "canonical_exponents", "classify",
    "compare_trajectories",
    "effective_couplings", "effective_matrix", "equilibrium_check",
    "floquet_state_amplitudes", "monodromy", "non_floquet_solution",
    "numerical_quasienergies", "propagate", "quasienergies",
    "quasienergy_spectrum", "rho_even", "rho_odd", "rhs", "scan",
    "spanning_stable_region",
]
