"""Brute-force linear-programming attack on the fixed-rate problem.

Each POVM element is restricted to a nonnegative combination of rank-one
projectors ``(I + n_k.sigma)/2`` over a fixed direction set. Completeness
gives four equality rows (identity and three Pauli coefficients), the fixed
failure rate one more. The feasible set is a subset of the true one, so the
LP optimum approaches the analytic value from below.

The direction set is nested (``directions(n)`` is a prefix of
``directions(n + 1)``) and antipodally paired, so the LP value is monotone
in ``n`` and every full-rank element is representable. Its upper-hemisphere
points are picked greedily, farthest first, from a fine Fibonacci spiral,
so every prefix covers the sphere about as evenly as a spiral of that size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from ..ensemble import TwoStateEnsemble
from ..errors import QOutOfRange
from .simplex import OPTIMAL, simplex_max

__all__ = ["OracleResult", "OracleReport", "directions", "lp_oracle", "compare_oracle"]

_POOL = 1 << 16  # candidate spiral points on the upper hemisphere
_MIN_BLOCK = 1024

@dataclass(frozen=True)
class OracleResult:
    P_cor_lp: float
    n_directions: int
    achieved_Q: float
    status: str
    iterations: int = 0


@dataclass(frozen=True)
class OracleReport:
    rows: list[dict]
    max_gap: float
    min_gap: float
    passed: bool


@lru_cache(maxsize=1)
def _spiral_pool() -> np.ndarray:
    k = np.arange(_POOL)
    z = 1.0 - (k + 0.5) / _POOL
    phi = math.pi * (3.0 - math.sqrt(5.0)) * k
    r = np.sqrt(1.0 - z * z)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


@lru_cache(maxsize=4)
def _greedy_hemisphere(h: int) -> np.ndarray:
    """First ``h`` points of the farthest-point ordering of the spiral pool.

    Distance is the angle between lines (``|n.m|``), since each pick also
    brings its antipode. The ordering does not depend on ``h``.
    """
    pool = _spiral_pool()
    idx = np.empty(h, dtype=np.int64)
    idx[0] = 0  # the point nearest the north pole
    near = np.abs(pool @ pool[0])
    for j in range(1, h):
        idx[j] = int(np.argmin(near))
        np.maximum(near, np.abs(pool @ pool[idx[j]]), out=near)
    return pool[idx]


def directions(n: int) -> np.ndarray:
    """``n`` unit vectors: greedily spread upper-hemisphere points, each followed by its antipode."""
    if n < 2:
        raise ValueError("need at least 2 directions")
    h = (n + 1) // 2
    if h > _POOL:
        raise ValueError(f"at most {2 * _POOL} directions are supported")
    block = min(_POOL, max(_MIN_BLOCK, 1 << (h - 1).bit_length()))
    up = _greedy_hemisphere(block)[:h]
    out = np.empty((2 * h, 3))
    out[0::2] = up
    out[1::2] = -up
    return out[:n]


def _lp_data(ens: TwoStateEnsemble, Q: float, dirs: np.ndarray):
    v1 = np.asarray(ens.bloch1.as_array())
    v2 = np.asarray(ens.bloch2.as_array())
    v0 = ens.q1 * v1 + ens.q2 * v2
    K = dirs.shape[0]
    # column block i (i = 0, 1, 2) holds the weights of element M_i
    A = np.zeros((5, 3 * K))
    for i in range(3):
        blk = slice(i * K, (i + 1) * K)
        A[0, blk] = 0.5
        A[1:4, blk] = 0.5 * dirs.T
    A[4, :K] = 0.5 * (1.0 + dirs @ v0)
    b = np.array([1.0, 0.0, 0.0, 0.0, Q])
    c = np.zeros(3 * K)
    c[K : 2 * K] = ens.q1 * 0.5 * (1.0 + dirs @ v1)
    c[2 * K :] = ens.q2 * 0.5 * (1.0 + dirs @ v2)
    return c, A, b


def lp_oracle(ens: TwoStateEnsemble, Q: float, n_directions: int = 2000, backend: str | None = None) -> OracleResult:
    """Best success probability over measurements built from ``n_directions`` projector directions."""
    if not (0.0 <= Q < 1.0):
        raise QOutOfRange(f"Q must lie in [0, 1), got {Q!r}")
    if n_directions < 50:
        raise ValueError("n_directions must be at least 50")
    dirs = directions(n_directions)
    c, A, b = _lp_data(ens, float(Q), dirs)
    res = simplex_max(c, A, b, backend=backend)
    if res.status != OPTIMAL:
        return OracleResult(float("nan"), n_directions, float("nan"), res.status, res.iterations)
    achieved = float(A[4] @ res.x)
    return OracleResult(res.objective, n_directions, achieved, res.status, res.iterations)


def compare_oracle(
    ens: TwoStateEnsemble,
    Q_grid: Sequence[float],
    n_directions: int = 2000,
    gap_tol: float = 1e-3,
    backend: str | None = None,
) -> OracleReport:
    """Analytic minus LP success probability on each grid point.

    Passes when every LP solve is optimal and each gap lies in
    ``[-1e-9, gap_tol]`` (the LP is a restriction, so it can never win).
    """
    from ..solver import solve_frir

    Q_grid = list(Q_grid)
    if not Q_grid:
        raise ValueError("Q_grid must be nonempty")
    rows = []
    ok = True
    for Q in Q_grid:
        analytic = solve_frir(ens, Q).P_cor
        lp = lp_oracle(ens, Q, n_directions, backend)
        gap = analytic - lp.P_cor_lp
        ok = ok and lp.status == OPTIMAL and -1e-9 <= gap <= gap_tol
        rows.append({"Q": float(Q), "analytic": analytic, "lp": lp.P_cor_lp, "gap": gap, "status": lp.status})
    gaps = [r["gap"] for r in rows]
    return OracleReport(rows, float(np.max(gaps)), float(np.min(gaps)), bool(ok))
