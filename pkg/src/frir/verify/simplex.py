"""Dense two-phase tableau simplex with Bland's rule.

Solves ``max c.x  s.t.  A x = b, x >= 0`` for small row counts and many
columns. The pivot loop exists twice with identical pivoting decisions: an
explicit-loop kernel compiled with numba, and a vectorised numpy kernel used
when numba is disabled (``FRIR_DISABLE_NUMBA=1``) or not installed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._accel import NUMBA_ENABLED, default_backend, njit

__all__ = ["LpResult", "simplex_max", "OPTIMAL", "INFEASIBLE", "ITERATION_LIMIT", "UNBOUNDED"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
ITERATION_LIMIT = "iteration_limit"
UNBOUNDED = "unbounded"

_STATUS = {0: OPTIMAL, 1: UNBOUNDED, 2: ITERATION_LIMIT}


@dataclass(frozen=True)
class LpResult:
    status: str
    objective: float
    x: np.ndarray
    iterations: int


@njit
def _iterate_loop(T, basis, n_enter, max_iter, eps, piv_tol):
    m = T.shape[0] - 1
    rhs = T.shape[1] - 1
    it = 0
    while it < max_iter:
        # Bland: lowest-index column with negative reduced cost
        enter = -1
        for j in range(n_enter):
            if T[m, j] < -eps:
                enter = j
                break
        if enter < 0:
            return 0, it
        best = np.inf
        for i in range(m):
            a = T[i, enter]
            if a > piv_tol:
                r = T[i, rhs] / a
                if r < best:
                    best = r
        if best == np.inf:
            return 1, it
        cut = best + 1e-12 * (1.0 + abs(best))
        leave = -1
        for i in range(m):
            a = T[i, enter]
            if a > piv_tol and T[i, rhs] / a <= cut:
                if leave < 0 or basis[i] < basis[leave]:
                    leave = i
        piv = T[leave, enter]
        for j in range(rhs + 1):
            T[leave, j] /= piv
        for i in range(m + 1):
            if i != leave:
                f = T[i, enter]
                if f != 0.0:
                    for j in range(rhs + 1):
                        T[i, j] -= f * T[leave, j]
        # basic values are nonnegative in exact arithmetic; rounding below
        # zero would hand Bland's ratio test negative ratios and cycle
        for i in range(m):
            if T[i, rhs] < 0.0:
                T[i, rhs] = 0.0
        basis[leave] = enter
        it += 1
    return 2, it


def _iterate_numpy(T, basis, n_enter, max_iter, eps, piv_tol):
    m = T.shape[0] - 1
    it = 0
    while it < max_iter:
        neg = np.flatnonzero(T[m, :n_enter] < -eps)
        if neg.size == 0:
            return 0, it
        enter = int(neg[0])
        col = T[:m, enter]
        ok = col > piv_tol
        if not ok.any():
            return 1, it
        ratios = np.full(m, np.inf)
        ratios[ok] = T[:m, -1][ok] / col[ok]
        best = ratios.min()
        tied = np.flatnonzero(ok & (ratios <= best + 1e-12 * (1.0 + abs(best))))
        leave = int(tied[np.argmin(basis[tied])])
        T[leave] /= T[leave, enter]
        f = T[:, enter].copy()
        f[leave] = 0.0
        T -= np.outer(f, T[leave])
        np.maximum(T[:m, -1], 0.0, out=T[:m, -1])
        basis[leave] = enter
        it += 1
    return 2, it


def _kernel(backend: str):
    if backend == "numpy":
        return _iterate_numpy
    if backend == "numba":
        if not NUMBA_ENABLED:
            raise RuntimeError("numba backend requested but numba is disabled or unavailable")
        return _iterate_loop
    raise ValueError(f"unknown backend {backend!r}")


def _price_out(T: np.ndarray, basis: np.ndarray) -> None:
    m = T.shape[0] - 1
    for i in range(m):
        f = T[m, basis[i]]
        if f != 0.0:
            T[m] -= f * T[i]


def simplex_max(
    c: np.ndarray,
    A: np.ndarray,
    b: np.ndarray,
    max_iter: int = 50_000,
    eps: float = 1e-12,
    piv_tol: float = 1e-9,
    feas_tol: float = 1e-9,
    backend: str | None = None,
) -> LpResult:
    """Maximise ``c.x`` subject to ``A x = b``, ``x >= 0``.

    Phase one minimises the sum of artificials; artificials left in the
    basis at zero level are pivoted out or their (redundant) rows dropped.
    ``iteration_limit`` is reported, never silently truncated. ``eps`` is
    the reduced-cost threshold; ``piv_tol`` the smallest admissible pivot,
    which keeps degenerate rows from blowing up the tableau.
    """
    iterate = _kernel(backend or default_backend())
    A = np.array(A, dtype=np.float64)
    b = np.array(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    m, n = A.shape
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # columns: n structural, m artificial, rhs
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, n : n + m] = 1.0
    basis = np.arange(n, n + m, dtype=np.int64)
    _price_out(T, basis)

    status, it1 = iterate(T, basis, n + m, max_iter, eps, piv_tol)
    if status == 2:
        return LpResult(ITERATION_LIMIT, float("nan"), np.full(n, np.nan), it1)
    if -T[m, -1] > feas_tol:
        return LpResult(INFEASIBLE, float("nan"), np.full(n, np.nan), it1)

    keep = np.ones(m, dtype=bool)
    for i in range(m):
        if basis[i] >= n:
            j = int(np.argmax(np.abs(T[i, :n])))
            if abs(T[i, j]) <= piv_tol:
                keep[i] = False
                continue
            T[i] /= T[i, j]
            f = T[:, j].copy()
            f[i] = 0.0
            T -= np.outer(f, T[i])
            basis[i] = j
    rows = np.flatnonzero(keep)
    T = np.vstack([T[rows], np.zeros((1, T.shape[1]))])
    T = np.ascontiguousarray(np.delete(T, np.s_[n : n + m], axis=1))
    basis = np.ascontiguousarray(basis[rows])
    T[-1, :n] = -c
    _price_out(T, basis)

    status, it2 = iterate(T, basis, n, max_iter - it1, eps, piv_tol)
    x = np.zeros(n)
    x[basis] = T[:-1, -1]
    if status != 0:
        return LpResult(_STATUS[status], float("nan"), x, it1 + it2)
    return LpResult(OPTIMAL, float(c @ x), x, it1 + it2)
