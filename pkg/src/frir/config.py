"""Numerical tolerances shared across modules.

Override per call where a function exposes a ``tol`` keyword, or globally by
replacing :data:`TOL` (e.g. ``frir.config.TOL = Tolerances(psd=1e-9)``).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    psd: float = 1e-10
    sing: float = 1e-12
    orth: float = 1e-12
    offdiag: float = 1e-10      # |rho12| below this routes to the diagonal closed form
    degenerate_c: float = 1e-10  # |C2 - C1| below this counts as C1 == C2
    interval: float = 1e-10     # membership slack for P_I intervals
    sqrt_clamp: float = 1e-12
    kkt: float = 1e-9
    bisect_f: float = 1e-12
    bisect_x: float = 0.0
    bisect_max_iter: int = 200


TOL = Tolerances()
