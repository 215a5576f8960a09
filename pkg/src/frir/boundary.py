"""Endpoints of the useful inconclusive-degree range.

At ``q = q0_lower`` the zero failure rate is optimal for the modified
three-state problem, at ``q = q0_upper`` certain failure is. Each endpoint
carries an interval of achievable failure rates and an explicit family of
optimal measurements, parametrised by ``epsilon`` where it is not unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .config import TOL
from .ensemble import DerivedData, Povm, bar_povm
from .errors import EpsilonOutOfRange, QOutOfInterval, RegimeError
from .linalg import ZERO, from_bloch

__all__ = [
    "PiInterval",
    "BoundaryCase",
    "BoundarySolution",
    "q0_upper",
    "q0_lower",
    "epsilon_range",
    "boundary_solution",
    "helstrom_povm",
]

UPPER_REGIMES = ("C1_lt_C2", "C1_eq_C2_case_a", "C1_eq_C2_case_b", "C1_eq_C2_case_c")
LOWER_REGIMES = ("C1_le_half", "rho12_zero", "rho12_nonzero")


@dataclass(frozen=True)
class PiInterval:
    lo: float
    hi: float

    @property
    def degenerate_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, Q: float, tol: float | None = None) -> bool:
        tol = TOL.interval if tol is None else tol
        return self.lo - tol <= Q <= self.hi + tol


@dataclass(frozen=True)
class BoundaryCase:
    which: str  # "upper" | "lower"
    regime: str
    q0: float
    interval: PiInterval


class BoundarySolution(NamedTuple):
    R_cor: float
    barM: Povm
    unique: bool
    epsilon: float | None


def q0_upper(d: DerivedData) -> BoundaryCase:
    """``q0_upper = C2`` with failure interval ``[Q1 | Q2 | 2|rho12|, 1]``."""
    a = abs(d.rho12)
    if not d.c_equal:
        regime, lo = "C1_lt_C2", d.Q1
    elif d.rho11 < a <= d.rho22:
        regime, lo = "C1_eq_C2_case_a", d.Q1
    elif d.rho22 < a <= d.rho11:
        regime, lo = "C1_eq_C2_case_b", d.Q2
    else:
        regime, lo = "C1_eq_C2_case_c", 2.0 * a
    return BoundaryCase("upper", regime, d.C2, PiInterval(lo, 1.0))


def q0_lower(d: DerivedData) -> BoundaryCase:
    if d.C1 <= 0.5 + TOL.degenerate_c:
        return BoundaryCase("lower", "C1_le_half", 1.0 - d.C1, PiInterval(0.0, 1.0 - d.Q2))
    if d.rho12_zero:
        hi = d.rho11 + (d.rho22 if d.c_equal else 0.0)
        return BoundaryCase("lower", "rho12_zero", d.C1, PiInterval(0.0, hi))
    if not d.chi_applicable:
        raise RegimeError("chi is undefined for this ensemble (weighted Bloch vectors coincide)")
    return BoundaryCase("lower", "rho12_nonzero", d.chi, PiInterval(0.0, 0.0))


def epsilon_range(d: DerivedData, bc: BoundaryCase, Q: float) -> tuple[float, float] | None:
    """Admissible ``epsilon`` at failure rate ``Q``; ``None`` when there is no free parameter."""
    r11, r22, a = d.rho11, d.rho22, abs(d.rho12)
    if bc.which == "upper":
        if bc.regime == "C1_lt_C2":
            return None
        disc = math.sqrt(max(Q * Q / 4.0 - a * a, 0.0))
        return (max(Q - r22, Q / 2.0 - disc), min(r11, Q / 2.0 + disc))
    if bc.regime == "C1_le_half":
        if abs(d.C1 - 0.5) < TOL.degenerate_c:
            return (0.0, max(1.0 - d.Q2 - Q, 0.0))
        return None
    if bc.regime == "rho12_zero":
        if d.c_equal:
            return (max(0.0, Q - r11), min(r22, Q))
        return None
    return None


def helstrom_povm(d: DerivedData) -> Povm:
    """Two-outcome minimum-error measurement, with an empty inconclusive element."""
    n = (d.q1 * d.v1 - d.q2 * d.v2) / d.l
    return Povm(ZERO, from_bloch(n), from_bloch(-n))


def _upper_povm(d: DerivedData, Q: float, eps: float) -> Povm:
    m0 = d.from_nu(eps, Q - eps, d.rho12)
    m1 = d.from_nu(d.rho11 - eps, 0.0)
    m2 = d.from_nu(0.0, d.rho22 - Q + eps)
    return Povm(m0, m1, m2, barred=True)


def _lower_half_povm(d: DerivedData, Q: float, eps: float) -> Povm:
    m0 = d.from_nu(Q, 0.0)
    m1 = d.from_nu(eps, 0.0)
    m2 = d.from_nu(d.rho11 - Q - eps, d.rho22, d.rho12)
    return Povm(m0, m1, m2, barred=True)


def _lower_diag_povm(d: DerivedData, Q: float, eps: float) -> Povm:
    m0 = d.from_nu(Q - eps, eps)
    m1 = d.from_nu(d.rho11 - Q + eps, 0.0)
    m2 = d.from_nu(0.0, d.rho22 - eps)
    return Povm(m0, m1, m2, barred=True)


def boundary_solution(d: DerivedData, bc: BoundaryCase, Q: float, epsilon: float | None = None) -> BoundarySolution:
    """Optimal success rate and barred measurement at failure rate ``Q`` on a boundary.

    ``epsilon`` selects a member of the optimal family; it defaults to the
    midpoint of its admissible range.
    """
    if not bc.interval.contains(Q):
        raise QOutOfInterval(f"Q={Q!r} outside [{bc.interval.lo!r}, {bc.interval.hi!r}] for {bc.which} boundary")
    rng = epsilon_range(d, bc, Q)
    if rng is not None:
        lo, hi = rng
        if epsilon is None:
            epsilon = 0.5 * (lo + hi)
        elif not (lo - TOL.interval <= epsilon <= hi + TOL.interval):
            raise EpsilonOutOfRange(f"epsilon={epsilon!r} outside [{lo!r}, {hi!r}]")
        unique = hi - lo <= TOL.interval
    else:
        if epsilon is not None:
            raise EpsilonOutOfRange("this regime has a unique optimal measurement; epsilon must be omitted")
        unique = True

    if bc.which == "upper":
        eps = d.rho11 if rng is None else epsilon
        return BoundarySolution(d.C2, _upper_povm(d, Q, eps), unique, eps)
    if bc.regime == "C1_le_half":
        eps = 0.0 if rng is None else epsilon
        R = 1.0 - d.C1 + (d.C1 - d.q1) / (1.0 - Q)
        return BoundarySolution(R, _lower_half_povm(d, Q, eps), unique, eps)
    if bc.regime == "rho12_zero":
        eps = 0.0 if rng is None else epsilon
        R = d.C1 + d.rho22 * (d.C2 - d.C1) / (1.0 - Q)
        return BoundarySolution(R, _lower_diag_povm(d, Q, eps), unique, eps)
    return BoundarySolution(0.5 * (1.0 + d.l), bar_povm(d, helstrom_povm(d)), True, None)
