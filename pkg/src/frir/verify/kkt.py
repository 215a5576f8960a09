"""Optimality certificates for the modified minimum-error problem.

In barred form the conditions read

    (i)   Mbar_i >= 0,  sum_i Mbar_i = rho0
    (ii)  q I + taubar_0 = rhobar_i + taubar_i  (i = 1, 2),  taubar_i >= 0
    (iii) tr[taubar_i Mbar_i] = 0

Every dual here is produced from the common operator ``Kbar = q I + taubar_0``
so that (ii) holds by construction up to rounding; the check still evaluates
it explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..config import TOL
from ..ensemble import DerivedData, Povm, TwoStateEnsemble, bar_povm, derive
from ..errors import RegimeError
from ..interior import lambdas_etas
from ..linalg import IDENTITY, HermitianOp, congruence, min_eigenvalue, projector, spectral_fn

__all__ = ["KktReport", "check_kkt", "dual_certificate", "certify"]


@dataclass(frozen=True)
class KktReport:
    completeness_residual: float
    psd_margins: tuple[float, float, float]
    dual_psd_margins: tuple[float, float, float]
    dual_consistency_residual: float
    slackness: tuple[float, float, float]
    duality_gap: float
    passed: bool
    tol: float = 1e-9
    Q_residual: float = 0.0
    P_cor_residual: float = 0.0

    def worst(self) -> float:
        """Largest violation across all conditions (0 when every check is met exactly)."""
        return max(
            self.completeness_residual,
            *(max(-m, 0.0) for m in self.psd_margins),
            *(max(-m, 0.0) for m in self.dual_psd_margins),
            self.dual_consistency_residual,
            *(abs(s) for s in self.slackness),
            abs(self.duality_gap),
            self.Q_residual,
            self.P_cor_residual,
        )


def check_kkt(
    d: DerivedData,
    q: float,
    barM: Povm,
    barTau: tuple[HermitianOp, HermitianOp, HermitianOp],
    tol: float | None = None,
) -> KktReport:
    """Evaluate the three optimality conditions and the duality gap; never raises."""
    tol = TOL.kkt if tol is None else tol
    completeness = (barM.total() - d.rho0).max_abs()
    psd = tuple(min_eigenvalue(m) for m in barM.elements)
    dpsd = tuple(min_eigenvalue(t) for t in barTau)
    K = q * IDENTITY + barTau[0]
    consistency = max((K - d.barrho(i) - barTau[i]).max_abs() for i in (1, 2))
    slack = tuple(t.inner(m) for t, m in zip(barTau, barM.elements))
    primal = q * barM.m0.trace + d.barrho1.inner(barM.m1) + d.barrho2.inner(barM.m2)
    gap = d.rho0.inner(K) - primal
    ok = (
        completeness <= tol
        and min(psd) >= -tol
        and min(dpsd) >= -tol
        and consistency <= tol
        and max(abs(s) for s in slack) <= tol
        and abs(gap) <= tol
    )
    return KktReport(completeness, psd, dpsd, consistency, slack, gap, ok, tol)


def _k_from_plain(d: DerivedData, K: HermitianOp) -> HermitianOp:
    return congruence(d.rho0_inv_sqrt, K)


def _half_helstrom(A: HermitianOp, B: HermitianOp) -> HermitianOp:
    """``(A + B + |A - B|) / 2``, the optimal dual of a two-outcome problem."""
    return 0.5 * (A + B + spectral_fn(A - B, "abs"))


def dual_certificate(d: DerivedData, kind: str, q: float, x: int | None = None) -> tuple[HermitianOp, ...]:
    """Closed-form barred dual ``(taubar_0, taubar_1, taubar_2)`` for a regime.

    ``kind`` is one of ``upper``, ``lower_half``, ``lower_diag``,
    ``helstrom``, ``two_element`` (needs the surviving index ``x``) and
    ``all_nonzero``.
    """
    if kind == "upper":
        Kbar = d.C2 * IDENTITY
    elif kind == "lower_half":
        Kbar = d.barrho2
    elif kind == "lower_diag":
        Kbar = d.C1 * IDENTITY + (d.C2 - d.C1) * projector(d.nu2)
    elif kind == "helstrom":
        Kbar = _k_from_plain(d, _half_helstrom(d.ens.q1 * d.ens.rho1, d.ens.q2 * d.ens.rho2))
    elif kind == "two_element":
        if x not in (1, 2):
            raise RegimeError("two-element dual needs the surviving index x")
        Kbar = _k_from_plain(d, _half_helstrom(q * d.rho0, d.prior(x) * d.state(x)))
    elif kind == "all_nonzero":
        lam1, lam2, *_ = lambdas_etas(d, q)
        lam1, lam2 = max(lam1, 0.0), max(lam2, 0.0)
        tau0 = d.from_nu(lam1, lam2, -d.phase12 * math.sqrt(lam1 * lam2))
        Kbar = q * IDENTITY + tau0
    else:
        raise RegimeError(f"unknown dual kind {kind!r}")
    tau0 = Kbar - q * IDENTITY
    return (tau0, Kbar - d.barrho1, Kbar - d.barrho2)


def certify(ens: TwoStateEnsemble, sol, tol: float | None = None) -> KktReport:
    """KKT report for a solver output, plus the primal ``Q`` and ``P_cor`` residuals."""
    tol = TOL.kkt if tol is None else tol
    d = derive(ens)
    povm = sol.povm.relabel() if d.swapped else sol.povm
    barM = bar_povm(d, povm)
    taus = dual_certificate(d, sol.dual_kind, sol.q_used, sol.x)
    rep = check_kkt(d, sol.q_used, barM, taus, tol)
    q_res = abs(barM.m0.trace - sol.Q)
    p_res = abs(d.barrho1.inner(barM.m1) + d.barrho2.inner(barM.m2) - sol.P_cor)
    return KktReport(
        rep.completeness_residual,
        rep.psd_margins,
        rep.dual_psd_margins,
        rep.dual_consistency_residual,
        rep.slackness,
        rep.duality_gap,
        rep.passed and q_res <= tol and p_res <= tol,
        tol,
        q_res,
        p_res,
    )
