"""Entanglement dynamics of two two-level atoms in an f-deformed Kerr cavity.

Closed-form evolution of the effective two-atom, 2k-photon model with
intensity-dependent coupling, deformed Kerr medium, detuning and Stark
shifts, plus the entanglement measures (von Neumann entropy, tangle,
concurrence) evaluated on it, all certified against an independent
brute-force Fock-space evolution.
"""

from .algebra import (
    ManifoldCoefficients,
    couplings,
    f_factorial_ratio,
    falling_ratio,
    gamma_phases,
    manifold_coefficients,
    residual_phase,
)
from .cubic import ComplexRootsError, CubicRoots, solve_cubic, solve_quadratic
from .density import (
    DensityMatrix,
    atoms_density_summed,
    partial_trace_atom2,
    partial_trace_field,
)
from .dynamics import (
    ClosedFormEvolution,
    DegenerateManifoldError,
    ManifoldSolution,
    StateVector,
    TruncationPlan,
    amplitudes_at,
    assemble_state,
    coherent_weight,
    coherent_weights,
    plan_truncation,
    solve_incomplete_manifolds,
    solve_manifold,
)
from .measures import (
    MeasureSample,
    concurrence,
    entropy_cardano,
    entropy_generic,
    hermitian_eigen,
    tangle,
)
from .model import (
    SCENARIO_LABELS,
    DeformationFunction,
    ModelParams,
    ScenarioPreset,
    scenario_preset,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "ClosedFormEvolution",
    "ComplexRootsError",
    "CubicRoots",
    "DeformationFunction",
    "DegenerateManifoldError",
    "DensityMatrix",
    "ManifoldCoefficients",
    "ManifoldSolution",
    "MeasureSample",
    "ModelParams",
    "SCENARIO_LABELS",
    "ScenarioPreset",
    "StateVector",
    "TruncationPlan",
    "amplitudes_at",
    "assemble_state",
    "atoms_density_summed",
    "coherent_weight",
    "coherent_weights",
    "concurrence",
    "couplings",
    "entropy_cardano",
    "entropy_generic",
    "f_factorial_ratio",
    "falling_ratio",
    "gamma_phases",
    "hermitian_eigen",
    "manifold_coefficients",
    "partial_trace_atom2",
    "partial_trace_field",
    "plan_truncation",
    "residual_phase",
    "scenario_preset",
    "solve_cubic",
    "solve_incomplete_manifolds",
    "solve_manifold",
    "solve_quadratic",
    "tangle",
    "validate",
]
