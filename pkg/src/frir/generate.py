"""Random ensembles for property tests, oracle runs and benchmarks."""

from __future__ import annotations

import numpy as np

from .ensemble import TwoStateEnsemble
from .linalg import HermitianOp, congruence, from_bloch, projector, spectral_fn

__all__ = ["random_bloch", "random_ensemble", "random_equal_c_ensemble", "diagonal_ensemble", "orthogonal_ensemble"]


def random_bloch(rng: np.random.Generator, pure: bool = False) -> np.ndarray:
    """Uniform point in the Bloch ball (or on the sphere when ``pure``)."""
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return v if pure else v * rng.uniform() ** (1.0 / 3.0)


def random_ensemble(
    rng: np.random.Generator,
    pure: bool = False,
    prior_range: tuple[float, float] = (0.05, 0.95),
    min_radius: float = 0.05,
) -> TwoStateEnsemble:
    """Two random qubit states with a random prior.

    ``min_radius`` keeps states away from the maximally mixed point, where
    the ensemble degenerates.
    """
    q1 = float(rng.uniform(*prior_range))
    while True:
        v1, v2 = random_bloch(rng, pure), random_bloch(rng, pure)
        if min(np.linalg.norm(v1), np.linalg.norm(v2)) >= min_radius and np.linalg.norm(v1 - v2) > 0.05:
            return TwoStateEnsemble.from_bloch(q1, v1, v2)


def _unit2(rng: np.random.Generator) -> tuple[complex, complex]:
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    z /= np.linalg.norm(z)
    return complex(z[0]), complex(z[1])


def random_equal_c_ensemble(rng: np.random.Generator, C: float | None = None) -> TwoStateEnsemble:
    """Ensemble with ``C1 == C2`` by construction.

    Picks ``rho0`` and a normalised operator ``rhobar1`` with eigenvalues
    ``C`` and ``1 - C``; then ``q1 rho1 = rho0^(1/2) rhobar1 rho0^(1/2)``.
    """
    C = float(rng.uniform(0.6, 0.99)) if C is None else C
    w = random_bloch(rng) * rng.uniform(0.2, 0.9)
    rho0 = from_bloch(w)
    u = _unit2(rng)
    u_perp = (-u[1].conjugate(), u[0].conjugate())
    rb1 = C * projector(u) + (1.0 - C) * projector(u_perp)
    sq = spectral_fn(rho0, "sqrt")
    w1 = congruence(sq, rb1)
    w2 = rho0 - w1
    q1 = w1.trace
    return TwoStateEnsemble(q1, 1.0 - q1, (1.0 / q1) * w1, (1.0 / w2.trace) * w2)


def diagonal_ensemble(q1: float, p1: float, p2: float) -> TwoStateEnsemble:
    """Two states diagonal in the computational basis: ``diag(p, 1 - p)``."""
    return TwoStateEnsemble(q1, 1.0 - q1, HermitianOp(p1, 1.0 - p1), HermitianOp(p2, 1.0 - p2))


def orthogonal_ensemble() -> TwoStateEnsemble:
    """``|0>`` and ``|1>`` with equal priors."""
    return TwoStateEnsemble(0.5, 0.5, HermitianOp(1.0, 0.0), HermitianOp(0.0, 1.0))
