"""Seeded Born-rule simulation of a three-outcome measurement.

All uniforms are drawn up front from ``numpy.random.default_rng(seed)``, so
the numba and numpy tallying kernels see identical inputs and return
identical counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._accel import NUMBA_ENABLED, default_backend, njit
from ..ensemble import Povm, TwoStateEnsemble
from ..errors import InvalidPovm

__all__ = ["MonteCarloResult", "born_table", "expected_rates", "monte_carlo"]

_PROB_TOL = 1e-9


@dataclass(frozen=True)
class MonteCarloResult:
    n_samples: int
    seed: int
    counts: np.ndarray  # counts[state, outcome], state in {0, 1} for labels 1, 2
    empirical_Q: float
    empirical_P_cor: float
    empirical_R_cor: float
    stderr_Q: float
    stderr_P_cor: float
    stderr_R_cor: float


def born_table(ens: TwoStateEnsemble, povm: Povm) -> np.ndarray:
    """``p[i, j] = tr[rho_{i+1} M_j]``; raises :class:`InvalidPovm` on out-of-range entries."""
    p = np.array([[rho.inner(m) for m in povm.elements] for rho in (ens.rho1, ens.rho2)])
    if p.min() < -_PROB_TOL or p.max() > 1.0 + _PROB_TOL:
        raise InvalidPovm(f"outcome probabilities outside [0, 1]: {p.tolist()}")
    if np.abs(p.sum(axis=1) - 1.0).max() > _PROB_TOL:
        raise InvalidPovm(f"outcome probabilities do not sum to 1: {p.sum(axis=1).tolist()}")
    p = np.clip(p, 0.0, 1.0)
    return p / p.sum(axis=1, keepdims=True)


def expected_rates(ens: TwoStateEnsemble, povm: Povm) -> tuple[float, float, float]:
    """Exact ``(Q, P_cor, R_cor)`` of a measurement."""
    p = born_table(ens, povm)
    Q = ens.q1 * p[0, 0] + ens.q2 * p[1, 0]
    P = ens.q1 * p[0, 1] + ens.q2 * p[1, 2]
    return float(Q), float(P), float(P / (1.0 - Q)) if Q < 1.0 else float("nan")


@njit
def _tally_loop(u_state, u_out, q1, cum):
    counts = np.zeros((2, 3), dtype=np.int64)
    for s in range(u_state.shape[0]):
        i = 0 if u_state[s] < q1 else 1
        u = u_out[s]
        if u < cum[i, 0]:
            j = 0
        elif u < cum[i, 1]:
            j = 1
        else:
            j = 2
        counts[i, j] += 1
    return counts


def _tally_numpy(u_state, u_out, q1, cum):
    i = (u_state >= q1).astype(np.int64)
    c = cum[i]
    j = (u_out >= c[:, 0]).astype(np.int64) + (u_out >= c[:, 1]).astype(np.int64)
    return np.bincount(3 * i + j, minlength=6).reshape(2, 3).astype(np.int64)


def _tally(backend: str):
    if backend == "numpy":
        return _tally_numpy
    if backend == "numba":
        if not NUMBA_ENABLED:
            raise RuntimeError("numba backend requested but numba is disabled or unavailable")
        return _tally_loop
    raise ValueError(f"unknown backend {backend!r}")


def monte_carlo(
    ens: TwoStateEnsemble,
    povm: Povm,
    n_samples: int,
    seed: int = 0,
    backend: str | None = None,
) -> MonteCarloResult:
    """Sample (state, outcome) pairs and report frequencies with binomial standard errors.

    ``empirical_R_cor`` is the fraction of conclusive outcomes that are
    correct; its standard error uses the conclusive count as sample size.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    p = born_table(ens, povm)
    cum = np.ascontiguousarray(np.cumsum(p, axis=1)[:, :2])
    rng = np.random.default_rng(seed)
    u = rng.random((2, n_samples))
    counts = _tally(backend or default_backend())(u[0], u[1], float(ens.q1), cum)

    n = n_samples
    fail = int(counts[:, 0].sum())
    correct = int(counts[0, 1] + counts[1, 2])
    conclusive = n - fail
    Q = fail / n
    P = correct / n
    R = correct / conclusive if conclusive else float("nan")
    se_R = math.sqrt(R * (1.0 - R) / conclusive) if conclusive else float("nan")
    return MonteCarloResult(
        n_samples=n,
        seed=seed,
        counts=counts,
        empirical_Q=Q,
        empirical_P_cor=P,
        empirical_R_cor=R,
        stderr_Q=math.sqrt(Q * (1.0 - Q) / n),
        stderr_P_cor=math.sqrt(P * (1.0 - P) / n),
        stderr_R_cor=se_R,
    )
