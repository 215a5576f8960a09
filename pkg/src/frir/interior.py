"""Modified problem strictly between the two special inconclusive degrees.

For ``rho12 != 0`` the optimal measurement at each ``q`` is unique. It
either keeps all three elements nonzero, or it drops one conclusive
element and reduces to a two-outcome discrimination between ``q rho0`` and
``q_x rho_x``. The sign pattern of the ``lambda``/``eta`` scalars tells the
two apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._bisect import bisect_sign
from .boundary import q0_lower, q0_upper
from .config import TOL
from .ensemble import DerivedData, Povm, bar_povm, unbar_povm
from .errors import ConsistencyError, DomainError, RegimeError
from .linalg import ZERO, from_bloch

__all__ = [
    "InteriorEval",
    "lambdas_etas",
    "classify_branch",
    "interior_eval",
    "eta_sign_change",
    "branch_transition",
]

ALL_NONZERO = "all_nonzero"


@dataclass(frozen=True)
class InteriorEval:
    q: float
    lambda1: float
    lambda2: float
    eta0: float
    eta1: float
    eta2: float
    branch: str
    P_I: float
    Pbar_cor: float
    povm: Povm
    bar_povm: Povm

    @property
    def vanishing(self) -> int | None:
        """Index of the conclusive element that is zero, if any."""
        if self.branch == ALL_NONZERO:
            return None
        return 3 - int(self.branch[-1])


def lambdas_etas(d: DerivedData, q: float) -> tuple[float, float, float, float, float]:
    """Dual eigen-weights and element traces of the all-nonzero solution at ``q``.

    The etas come back NaN where the square root in their denominators has no
    real positive value (``lambda1 * lambda2 <= 0``); the all-nonzero form
    does not exist there.
    """
    C1, C2 = d.C1, d.C2
    t = 2.0 * q - 1.0
    D = C1 + C2 - 1.0
    if abs(t) <= 1e-12:
        raise DomainError("q = 1/2 is a pole of the interior formulas")
    if D <= 1e-10:
        raise DomainError("C1 + C2 - 1 vanishes")
    k1, k2 = 2.0 * C1 - 1.0, 2.0 * C2 - 1.0
    a1, a2 = C1 - q, C2 - q
    b1, b2 = q - 1.0 + C1, q - 1.0 + C2
    lam1 = k2 * a1 * b1 / (t * D)
    lam2 = k1 * a2 * b2 / (t * D)

    arg = k1 * k2 * a1 * a2 * b1 * b2
    if -TOL.sqrt_clamp <= arg < 0.0:
        arg = 0.0
    if arg <= 0.0:
        return lam1, lam2, math.nan, math.nan, math.nan
    S = math.sqrt(arg)
    r11, r22, a = d.rho11, d.rho22, abs(d.rho12)
    t2 = t * t
    kk = k1 * k2

    pre0 = (kk - t2) / (2.0 * t2 * D)
    s0 = a * kk * (a1 * a2 + b1 * b2) / S
    eta0 = pre0 * (1.0 - 2.0 * r11 * C1 - 2.0 * r22 * C2 + s0)
    pre1 = (kk + 2.0 * (C2 - C1) * t + t2) / (2.0 * t2 * D)
    s1 = a * a2 * b1 * (k1 * b2 + k2 * a1) / S
    eta1 = pre1 * (r11 * b1 + r22 * a2 - s1)
    pre2 = (kk - 2.0 * (C2 - C1) * t + t2) / (2.0 * t2 * D)
    s2 = a * a1 * b2 * (k2 * b1 + k1 * a2) / S
    eta2 = pre2 * (r11 * a1 + r22 * b2 - s2)

    # the traces of the three barred elements sum to tr(rho0) = 1. Near the
    # interval ends the factors C - q etc. carry large relative rounding
    # error and the bracketed sums cancel, so the allowed mismatch grows with
    # the size of the cancelling terms and the inverse of the smallest factor
    book = 1.0 - eta1 - eta2
    scale = max(1.0, abs(pre0) * (1.0 + abs(s0)), abs(pre1) * (1.0 + abs(s1)), abs(pre2) * (1.0 + abs(s2)))
    cond = 1.0 / max(min(abs(a1), abs(a2), abs(b1), abs(b2), abs(t)), 1e-300)
    if abs(book - eta0) > (1e-8 + 1e-14 * cond) * scale:
        raise ConsistencyError(f"eta0={eta0!r} disagrees with 1 - eta1 - eta2 = {book!r} at q={q!r}")
    return lam1, lam2, eta0, eta1, eta2


def _two_element_score(d: DerivedData, q: float, i: int) -> float:
    return d.prior(i) + float(np.linalg.norm(q * d.v0 - d.prior(i) * d.bloch(i)))


def _pick_survivor(d: DerivedData, q: float) -> int:
    s1, s2 = _two_element_score(d, q, 1), _two_element_score(d, q, 2)
    x = 1 if s1 > s2 + 1e-12 else 2
    forced = d.C1 <= 0.5 + TOL.degenerate_c or q > d.C1
    if forced and x != 2:
        raise ConsistencyError(f"element 1 should vanish at q={q!r} but the argmax keeps it (scores {s1!r}, {s2!r})")
    return x


def _is_all_nonzero(vals: tuple[float, float, float, float, float]) -> bool:
    lam1, lam2, e0, e1, e2 = vals
    if any(math.isnan(v) for v in vals):
        return False
    return lam1 >= -1e-12 and lam2 >= -1e-12 and min(e0, e1, e2) > 1e-12


def classify_branch(d: DerivedData, q: float) -> str:
    if d.rho12_zero:
        raise RegimeError("branch classification needs rho12 != 0")
    if _is_all_nonzero(lambdas_etas(d, q)):
        return ALL_NONZERO
    return f"two_element_x{_pick_survivor(d, q)}"


def _all_nonzero_bar(d: DerivedData, q: float, lam1: float, lam2: float, etas) -> Povm:
    e0, e1, e2 = etas
    C1, C2 = d.C1, d.C2
    off = d.phase12 * math.sqrt(lam1 * lam2)
    s = lam1 + lam2
    m0 = (e0 / s) * d.from_nu(lam2, lam1, off)
    m1 = (e1 / (s + 2 * q - 1 - C1 + C2)) * d.from_nu(lam2 + q - 1 + C2, lam1 + q - C1, off)
    m2 = (e2 / (s + 2 * q - 1 + C1 - C2)) * d.from_nu(lam2 + q - C2, lam1 + q - 1 + C1, off)
    return Povm(m0, m1, m2, barred=True)


def interior_eval(d: DerivedData, q: float) -> InteriorEval:
    """Optimal value, failure rate and (unique) measurement of the modified problem at ``q``."""
    if d.rho12_zero:
        raise RegimeError("interior evaluation needs rho12 != 0")
    vals = lambdas_etas(d, q)
    lam1, lam2, e0, e1, e2 = vals
    if _is_all_nonzero(vals):
        a = abs(d.rho12)
        pbar = q + d.rho11 * lam1 + d.rho22 * lam2 - 2.0 * a * math.sqrt(lam1 * lam2)
        bar = _all_nonzero_bar(d, q, lam1, lam2, (e0, e1, e2))
        return InteriorEval(q, lam1, lam2, e0, e1, e2, ALL_NONZERO, e0, pbar, unbar_povm(d, bar), bar)

    x = _pick_survivor(d, q)
    qx, vx = d.prior(x), d.bloch(x)
    w = q * d.v0 - qx * vx
    nrm = float(np.linalg.norm(w))
    n = w / nrm
    pbar = 0.5 * (q + qx + nrm)
    p_i = 0.5 * (1.0 + float(n @ d.v0))
    m0, mx = from_bloch(n), from_bloch(-n)
    povm = Povm(m0, mx, ZERO) if x == 1 else Povm(m0, ZERO, mx)
    return InteriorEval(q, lam1, lam2, e0, e1, e2, f"two_element_x{x}", p_i, pbar, povm, bar_povm(d, povm))


def eta_sign_change(d: DerivedData, index: int, lo: float, hi: float) -> float:
    """Bisect for the ``q`` in ``[lo, hi]`` where ``eta_index`` changes sign."""

    def eta(q: float) -> float:
        return lambdas_etas(d, q)[2 + index]

    return bisect_sign(eta, lo, hi)


def branch_transition(d: DerivedData, margin: float = 1e-9) -> tuple[float, float, int] | None:
    """Where the all-nonzero branch ends inside the open interior.

    Returns ``(q, P_I(q), vanishing_index)`` or ``None`` when the branch does
    not change inside ``(q0_lower, q0_upper)``.
    """
    if d.rho12_zero:
        return None
    lo = q0_lower(d).q0 + margin
    hi = q0_upper(d).q0 - margin
    if lo >= hi:
        return None

    def flag(q: float) -> float:
        return 1.0 if _is_all_nonzero(lambdas_etas(d, q)) else -1.0

    if flag(lo) < 0 or flag(hi) > 0:
        return None
    q_star = bisect_sign(flag, lo, hi)
    ev = interior_eval(d, q_star)
    hi_side = interior_eval(d, min(q_star + 1e-12, hi))
    vanish = hi_side.vanishing or 1
    return q_star, ev.P_I, vanish
