"""Top-level solve at a fixed failure rate ``Q``.

The fixed-rate problem is mapped to a modified three-state minimum-error
problem at inconclusive degree ``q``::

    P_cor(Q) = Pbar_cor(q) - q Q,    R_cor(Q) = P_cor(Q) / (1 - Q)

Dispatch: diagonal ``rho12`` first (complete closed form), then the two
boundary intervals, then bisection of the monotone map ``q -> P_I(q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._bisect import bisect_increasing
from .boundary import boundary_solution, q0_lower, q0_upper
from .config import TOL
from .ensemble import DerivedData, Povm, TwoStateEnsemble, derive, unbar_povm
from .errors import BracketFailure, EpsilonOutOfRange, NotApplicable, QOutOfRange, RegimeError
from .interior import interior_eval
from .linalg import ZERO

__all__ = [
    "FrirSolution",
    "solve_frir",
    "solve_rho12_zero",
    "invert_failure_probability",
    "closed_form_equal_C",
    "sweep",
]


@dataclass(frozen=True)
class FrirSolution:
    """Optimal fixed-rate solution.

    ``povm`` is in the caller's labels. ``q_used``, ``dual_kind`` and ``x``
    describe the modified problem that produced it (``x`` is the surviving
    conclusive element on a two-element branch, in the internal
    ``C1 <= C2`` labelling).
    """

    Q: float
    R_cor: float
    P_cor: float
    q_used: float
    povm: Povm
    regime: str
    unique: bool
    epsilon: float | None
    Pbar_cor: float
    swapped: bool
    dual_kind: str
    x: int | None = None

    @property
    def P_err(self) -> float:
        return (1.0 - self.Q) - self.P_cor


def _check_Q(Q: float) -> float:
    Q = float(Q)
    if not (0.0 <= Q < 1.0):
        raise QOutOfRange(f"Q must lie in [0, 1), got {Q!r}")
    return Q


def _finish(d: DerivedData, Q, R, q, bar: Povm, regime, unique, eps, dual_kind, x=None, povm=None) -> FrirSolution:
    if povm is None:
        povm = unbar_povm(d, bar)
    if d.swapped:
        povm = povm.relabel()
    P = R * (1.0 - Q)
    return FrirSolution(
        Q=Q,
        R_cor=R,
        P_cor=P,
        q_used=q,
        povm=povm,
        regime=regime,
        unique=unique,
        epsilon=eps,
        Pbar_cor=P + q * Q,
        swapped=d.swapped,
        dual_kind=dual_kind,
        x=x,
    )


def _pick_epsilon(lo: float, hi: float, epsilon: float | None) -> tuple[float, bool]:
    unique = hi - lo <= TOL.interval
    if epsilon is None:
        return 0.5 * (lo + hi), unique
    if not (lo - TOL.interval <= epsilon <= hi + TOL.interval):
        raise EpsilonOutOfRange(f"epsilon={epsilon!r} outside [{lo!r}, {hi!r}]")
    return float(epsilon), unique


def _solve_diag(d: DerivedData, Q: float, epsilon: float | None) -> FrirSolution:
    r11, r22, C1, C2 = d.rho11, d.rho22, d.C1, d.C2
    if d.c_equal:
        eps, unique = _pick_epsilon(max(0.0, Q - r22), min(r11, Q), epsilon)
        bar = Povm(d.from_nu(eps, Q - eps), d.from_nu(r11 - eps, 0.0), d.from_nu(0.0, r22 - Q + eps), barred=True)
        return _finish(d, Q, C2, C2, bar, "rho12_zero_C_equal", unique, eps, "upper")
    if Q >= r11:
        if epsilon is not None:
            raise EpsilonOutOfRange("this regime has a unique optimal measurement; epsilon must be omitted")
        bar = Povm(d.from_nu(r11, Q - r11), ZERO, d.from_nu(0.0, 1.0 - Q), barred=True)
        return _finish(d, Q, C2, C2, bar, "rho12_zero_upper", True, None, "upper")

    if abs(C1 - 0.5) < TOL.degenerate_c:
        eps, unique = _pick_epsilon(0.0, r11 - Q, epsilon)
    else:
        if epsilon is not None:
            raise EpsilonOutOfRange("this regime has a unique optimal measurement; epsilon must be omitted")
        eps, unique = (0.0 if C1 < 0.5 else r11 - Q), True
    bar = Povm(d.from_nu(Q, 0.0), d.from_nu(eps, 0.0), d.from_nu(r11 - Q - eps, r22), barred=True)
    if C1 <= 0.5:
        R = 1.0 - C1 + r22 * (C1 + C2 - 1.0) / (1.0 - Q)
        return _finish(d, Q, R, 1.0 - C1, bar, "rho12_zero_lower_C1_le_half", unique, eps, "lower_half")
    R = C1 + r22 * (C2 - C1) / (1.0 - Q)
    return _finish(d, Q, R, C1, bar, "rho12_zero_lower", unique, eps, "lower_diag")


def solve_rho12_zero(ens: TwoStateEnsemble, Q: float, epsilon: float | None = None) -> FrirSolution:
    """Complete closed-form solution when ``rho0`` is diagonal in the ``nu`` basis."""
    Q = _check_Q(Q)
    d = derive(ens)
    if not d.rho12_zero:
        raise NotApplicable(f"|rho12| = {abs(d.rho12):.3e} is not below the off-diagonal threshold")
    return _solve_diag(d, Q, epsilon)


def invert_failure_probability(d: DerivedData, Q: float) -> float:
    """``q`` in the open interior with ``P_I(q) = Q`` (bisection on a monotone map)."""
    if d.rho12_zero:
        raise RegimeError("the interior is empty when rho12 = 0")
    lower, upper = q0_lower(d), q0_upper(d)
    if not (lower.interval.hi < Q < upper.interval.lo):
        raise BracketFailure(
            f"Q={Q!r} is not strictly between {lower.interval.hi!r} and {upper.interval.lo!r}"
        )
    return bisect_increasing(
        lambda q: interior_eval(d, q).P_I,
        lower.q0,
        upper.q0,
        Q,
        TOL.bisect_f,
        TOL.bisect_x,
        TOL.bisect_max_iter,
    )


def _solve_derived(d: DerivedData, Q: float, epsilon: float | None) -> FrirSolution:
    if d.rho12_zero:
        return _solve_diag(d, Q, epsilon)

    for bc in (q0_upper(d), q0_lower(d)):
        if bc.interval.contains(Q):
            bs = boundary_solution(d, bc, Q, epsilon)
            if bc.regime == "rho12_nonzero":
                kind = "helstrom"
            elif bc.which == "upper":
                kind = "upper"
            else:
                kind = "lower_half"
            return _finish(d, Q, bs.R_cor, bc.q0, bs.barM, f"{bc.which}_{bc.regime}", bs.unique, bs.epsilon, kind)

    if epsilon is not None:
        raise EpsilonOutOfRange("the interior optimal measurement is unique; epsilon must be omitted")
    q = invert_failure_probability(d, Q)
    ev = interior_eval(d, q)
    R = (ev.Pbar_cor - q * Q) / (1.0 - Q)
    if ev.branch == "all_nonzero":
        return _finish(d, Q, R, q, ev.bar_povm, "interior_all_nonzero", True, None, "all_nonzero", povm=ev.povm)
    x = 3 - ev.vanishing
    return _finish(d, Q, R, q, ev.bar_povm, f"interior_{ev.branch}", True, None, "two_element", x=x, povm=ev.povm)


def solve_frir(ens: TwoStateEnsemble, Q: float, epsilon: float | None = None) -> FrirSolution:
    """Maximum success rate and an optimal measurement at failure rate ``Q``.

    ``epsilon`` picks a member of a non-unique optimal family (boundary
    regimes only); by default the midpoint of its admissible range is used.
    """
    Q = _check_Q(Q)
    return _solve_derived(derive(ens), Q, epsilon)


def _equal_c_range(d: DerivedData) -> float:
    a, r11, r22 = abs(d.rho12), d.rho11, d.rho22
    if min(r11, r22) >= a:
        return 2.0 * a
    return 2.0 * (r11 * r22 - a * a) / (1.0 - 2.0 * a)


def closed_form_equal_C(ens: TwoStateEnsemble, Q: float) -> FrirSolution:
    """Closed-form solution for ``C1 == C2`` while all three elements are nonzero."""
    Q = _check_Q(Q)
    d = derive(ens)
    if not d.c_equal or d.rho12_zero:
        raise NotApplicable("closed form needs C1 == C2 and rho12 != 0")
    a = abs(d.rho12)
    C = 0.5 * (d.C1 + d.C2)
    q_hi = _equal_c_range(d)
    if Q >= q_hi:
        raise NotApplicable(f"Q={Q!r} beyond the all-nonzero range [0, {q_hi!r})")
    s1 = 1.0 - 2.0 * a
    s2 = 1.0 + 2.0 * a - 2.0 * Q
    q = 0.5 + 0.5 * (2.0 * C - 1.0) * math.sqrt(s1 / s2)
    P = 0.5 * (1.0 - Q) + 0.5 * (2.0 * C - 1.0) * math.sqrt(s1 * s2)
    R = P / (1.0 - Q)
    if Q <= TOL.interval:
        bs = boundary_solution(d, q0_lower(d), 0.0)
        return _finish(d, Q, R, q, bs.barM, "closed_form_equal_C", True, None, "helstrom")
    ev = interior_eval(d, q)
    return _finish(d, Q, R, q, ev.bar_povm, "closed_form_equal_C", True, None, "all_nonzero", povm=ev.povm)


def _grid(spec: int | Sequence[float], lo: float, hi: float, interior: bool) -> np.ndarray:
    if isinstance(spec, (int, np.integer)):
        n = int(spec)
        if n < 2:
            raise ValueError("a grid needs at least 2 points")
        if interior:
            return lo + (hi - lo) * np.arange(1, n + 1) / (n + 1)
        return np.linspace(lo, hi, n, endpoint=False)
    g = np.sort(np.asarray(spec, dtype=float))
    if g.size < 2:
        raise ValueError("a grid needs at least 2 points")
    return g


def sweep(
    ens: TwoStateEnsemble,
    q_grid: int | Sequence[float] | None = None,
    Q_grid: int | Sequence[float] | None = None,
) -> list[dict]:
    """Tabulate the modified problem over ``q`` or the fixed-rate problem over ``Q``.

    An integer grid is spread evenly over the open interior of the
    inconclusive-degree range (``q_grid``) or over ``[0, 1)`` (``Q_grid``).
    """
    if (q_grid is None) == (Q_grid is None):
        raise ValueError("exactly one of q_grid and Q_grid is required")
    d = derive(ens)
    rows: list[dict] = []
    if q_grid is not None:
        if d.rho12_zero:
            raise RegimeError("no interior inconclusive degrees when rho12 = 0")
        for q in _grid(q_grid, q0_lower(d).q0, q0_upper(d).q0, interior=True):
            ev = interior_eval(d, float(q))
            rows.append(
                {
                    "q": ev.q,
                    "P_I": ev.P_I,
                    "Pbar_cor": ev.Pbar_cor,
                    "lambda1": ev.lambda1,
                    "lambda2": ev.lambda2,
                    "eta0": ev.eta0,
                    "eta1": ev.eta1,
                    "eta2": ev.eta2,
                    "branch": ev.branch,
                }
            )
        return rows
    for Q in _grid(Q_grid, 0.0, 1.0, interior=False):
        sol = _solve_derived(d, _check_Q(Q), None)
        rows.append(
            {
                "Q": sol.Q,
                "R_cor": sol.R_cor,
                "P_cor": sol.P_cor,
                "P_err": sol.P_err,
                "q_used": sol.q_used,
                "regime": sol.regime,
            }
        )
    return rows
