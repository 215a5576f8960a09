"""Optimal discrimination of two mixed qubit states at a fixed rate of inconclusive results."""

from .boundary import BoundaryCase, PiInterval, boundary_solution, epsilon_range, q0_lower, q0_upper
from .config import TOL, Tolerances
from .ensemble import DerivedData, Povm, TwoStateEnsemble, bar_povm, derive, worked_example, unbar_povm
from .errors import FrirError
from .interior import InteriorEval, branch_transition, classify_branch, interior_eval, lambdas_etas
from .linalg import BlochVector, HermitianOp, SpectralPair, from_bloch, to_bloch
from .solver import (
    FrirSolution,
    closed_form_equal_C,
    invert_failure_probability,
    solve_frir,
    solve_rho12_zero,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "BoundaryCase",
    "DerivedData",
    "FrirError",
    "FrirSolution",
    "HermitianOp",
    "InteriorEval",
    "PiInterval",
    "Povm",
    "SpectralPair",
    "TOL",
    "Tolerances",
    "TwoStateEnsemble",
    "bar_povm",
    "boundary_solution",
    "branch_transition",
    "classify_branch",
    "closed_form_equal_C",
    "derive",
    "epsilon_range",
    "from_bloch",
    "interior_eval",
    "invert_failure_probability",
    "lambdas_etas",
    "worked_example",
    "q0_lower",
    "q0_upper",
    "solve_frir",
    "solve_rho12_zero",
    "sweep",
    "to_bloch",
    "unbar_povm",
]
