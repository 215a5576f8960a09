"""Two-state qubit ensembles and the derived quantities the case analysis runs on."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import CompletenessViolation, DegenerateEnsemble, InvalidEnsemble, SingularRho0
from .linalg import (
    BlochVector,
    HermitianOp,
    congruence,
    from_bloch,
    min_eigenvalue,
    projector,
    sandwich,
    spectral_2x2,
    spectral_fn,
    to_bloch,
)

__all__ = ["TwoStateEnsemble", "DerivedData", "Povm", "derive", "unbar_povm", "bar_povm", "worked_example"]


@dataclass(frozen=True)
class TwoStateEnsemble:
    q1: float
    q2: float
    rho1: HermitianOp
    rho2: HermitianOp

    def __post_init__(self):
        if not (self.q1 > 0 and self.q2 > 0):
            raise InvalidEnsemble(f"priors must be positive, got q1={self.q1}, q2={self.q2}")
        if abs(self.q1 + self.q2 - 1.0) > 1e-12:
            raise InvalidEnsemble(f"priors must sum to 1, got {self.q1 + self.q2!r}")
        for name, rho in (("rho1", self.rho1), ("rho2", self.rho2)):
            if abs(rho.trace - 1.0) > 1e-12:
                raise InvalidEnsemble(f"{name} must have unit trace, got {rho.trace!r}")
            lo = min_eigenvalue(rho)
            if lo < -TOL.psd:
                raise InvalidEnsemble(f"{name} is not positive semidefinite (min eigenvalue {lo:.3e})")

    @classmethod
    def from_bloch(cls, q1: float, v1, v2, q2: float | None = None) -> "TwoStateEnsemble":
        q2 = 1.0 - q1 if q2 is None else q2
        return cls(q1, q2, from_bloch(v1), from_bloch(v2))

    @property
    def rho0(self) -> HermitianOp:
        return self.q1 * self.rho1 + self.q2 * self.rho2

    def swapped(self) -> "TwoStateEnsemble":
        return TwoStateEnsemble(self.q2, self.q1, self.rho2, self.rho1)

    @property
    def bloch1(self) -> BlochVector:
        return to_bloch(self.rho1)[1]

    @property
    def bloch2(self) -> BlochVector:
        return to_bloch(self.rho2)[1]


@dataclass(frozen=True)
class Povm:
    """Three-outcome measurement; ``m0`` is the inconclusive element.

    ``barred`` marks the ``rho0**(1/2) M rho0**(1/2)`` representation.
    """

    m0: HermitianOp
    m1: HermitianOp
    m2: HermitianOp
    barred: bool = False

    @property
    def elements(self) -> tuple[HermitianOp, HermitianOp, HermitianOp]:
        return (self.m0, self.m1, self.m2)

    def total(self) -> HermitianOp:
        return self.m0 + self.m1 + self.m2

    def relabel(self) -> "Povm":
        """Swap the two conclusive outcomes."""
        return Povm(self.m0, self.m2, self.m1, self.barred)

    def __getitem__(self, i: int) -> HermitianOp:
        return self.elements[i]


@dataclass(frozen=True)
class DerivedData:
    """Everything the case analysis consumes, in the ``C1 <= C2`` labelling.

    ``swapped`` records whether the user's labels 1 and 2 were exchanged to
    get there. Operators in the ``nu`` basis are handled by :meth:`from_nu`.
    """

    ens: TwoStateEnsemble
    swapped: bool
    rho0: HermitianOp
    rho0_sqrt: HermitianOp
    rho0_inv_sqrt: HermitianOp
    barrho1: HermitianOp
    barrho2: HermitianOp
    C1: float
    C2: float
    nu1: tuple[complex, complex]
    nu2: tuple[complex, complex]
    rho11: float
    rho22: float
    rho12: complex
    e: float
    l: float
    v0: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    gamma11: float
    gamma22: float
    gamma12: complex
    chi1: float
    chi2: float
    chi: float
    chi_applicable: bool

    @property
    def q1(self) -> float:
        return self.ens.q1

    @property
    def q2(self) -> float:
        return self.ens.q2

    @property
    def abs_rho12(self) -> float:
        return abs(self.rho12)

    @property
    def rho12_zero(self) -> bool:
        return abs(self.rho12) < TOL.offdiag

    @property
    def c_equal(self) -> bool:
        return abs(self.C2 - self.C1) < TOL.degenerate_c

    @property
    def Q1(self) -> float:
        return self.rho11 + abs(self.rho12) ** 2 / self.rho11

    @property
    def Q2(self) -> float:
        return self.rho22 + abs(self.rho12) ** 2 / self.rho22

    @property
    def phase12(self) -> complex:
        a = abs(self.rho12)
        return 1 + 0j if a == 0 else self.rho12 / a

    def from_nu(self, a11: float, a22: float, a12: complex = 0j) -> HermitianOp:
        """``a11|nu1><nu1| + a12|nu1><nu2| + conj(a12)|nu2><nu1| + a22|nu2><nu2|``."""
        n1, n2 = self.nu1, self.nu2
        p1, p2 = projector(n1), projector(n2)
        x = a12 * n1[0] * n2[0].conjugate()
        y = a12 * n1[1] * n2[1].conjugate()
        cross01 = a12 * n1[0] * n2[1].conjugate() + (a12 * n1[1] * n2[0].conjugate()).conjugate()
        cross = HermitianOp(2.0 * x.real, 2.0 * y.real, cross01)
        return a11 * p1 + a22 * p2 + cross

    def to_nu(self, h: HermitianOp) -> tuple[float, float, complex]:
        return (
            sandwich(self.nu1, h, self.nu1).real,
            sandwich(self.nu2, h, self.nu2).real,
            sandwich(self.nu1, h, self.nu2),
        )

    def barrho(self, i: int) -> HermitianOp:
        return self.barrho1 if i == 1 else self.barrho2

    def prior(self, i: int) -> float:
        return self.ens.q1 if i == 1 else self.ens.q2

    def bloch(self, i: int) -> np.ndarray:
        return (self.v0, self.v1, self.v2)[i]

    def state(self, i: int) -> HermitianOp:
        return (self.rho0, self.ens.rho1, self.ens.rho2)[i]


def _derive_labelled(ens: TwoStateEnsemble, swapped: bool) -> DerivedData:
    rho0 = ens.rho0
    if min_eigenvalue(rho0) < 1e-12:
        raise SingularRho0(f"rho0 is rank deficient (min eigenvalue {min_eigenvalue(rho0):.3e})")
    r_isq = spectral_fn(rho0, "inv_sqrt")
    r_sq = spectral_fn(rho0, "sqrt")
    b1 = congruence(r_isq, ens.q1 * ens.rho1)
    b2 = congruence(r_isq, ens.q2 * ens.rho2)
    sp1 = spectral_2x2(b1)
    sp2 = spectral_2x2(b2)
    C1, C2 = sp1.eigenvalue_high, sp2.eigenvalue_high
    if C1 + C2 <= 1.0 + 1e-10:
        raise DegenerateEnsemble(f"C1 + C2 = {C1 + C2:.12g} <= 1: states are not distinguishable here")
    nu1, nu2 = sp1.eigvec_high, sp2.eigvec_high
    rho11 = sandwich(nu1, rho0, nu1).real
    rho22 = sandwich(nu2, rho0, nu2).real
    rho12 = sandwich(nu1, rho0, nu2)

    _, bv1 = to_bloch(ens.rho1)
    _, bv2 = to_bloch(ens.rho2)
    v1, v2 = bv1.as_array(), bv2.as_array()
    v0 = ens.q1 * v1 + ens.q2 * v2
    e = abs(ens.q1 - ens.q2)
    l = float(np.linalg.norm(ens.q1 * v1 - ens.q2 * v2))

    if l > TOL.sing:
        r_inv = spectral_fn(rho0, "inv")
        pre = (l * l - e * e) / (4.0 * l)
        g11 = pre * sandwich(nu1, r_inv, nu1).real
        g22 = pre * sandwich(nu2, r_inv, nu2).real
        g12 = pre * sandwich(nu1, r_inv, nu2)
        chi1 = 0.5 + g11 + (2 * ens.q1 - 1) * (2 * C1 - 1) / (2 * l)
        chi2 = 0.5 + g22 + (2 * ens.q2 - 1) * (2 * C2 - 1) / (2 * l)
        chi = 0.5 * (chi1 + chi2 - math.sqrt((chi1 - chi2) ** 2 + 4 * abs(g12) ** 2))
    else:
        g11 = g22 = chi1 = chi2 = chi = math.nan
        g12 = complex(math.nan, math.nan)
    chi_ok = l > TOL.sing and C1 > 0.5 and abs(rho12) >= TOL.offdiag

    return DerivedData(
        ens=ens,
        swapped=swapped,
        rho0=rho0,
        rho0_sqrt=r_sq,
        rho0_inv_sqrt=r_isq,
        barrho1=b1,
        barrho2=b2,
        C1=C1,
        C2=C2,
        nu1=nu1,
        nu2=nu2,
        rho11=rho11,
        rho22=rho22,
        rho12=rho12,
        e=e,
        l=l,
        v0=v0,
        v1=v1,
        v2=v2,
        gamma11=g11,
        gamma22=g22,
        gamma12=g12,
        chi1=chi1,
        chi2=chi2,
        chi=chi,
        chi_applicable=chi_ok,
    )


def derive(ens: TwoStateEnsemble) -> DerivedData:
    """Compute the derived data, relabelling 1 <-> 2 if needed so that ``C1 <= C2``.

    Labels are only exchanged when ``C1`` exceeds ``C2`` by more than the
    degeneracy threshold, so ensembles with ``C1 == C2`` keep the user's order.
    """
    d = _derive_labelled(ens, swapped=False)
    if d.C1 - d.C2 > TOL.degenerate_c:
        d = _derive_labelled(ens.swapped(), swapped=True)
    return d


def bar_povm(d: DerivedData, povm: Povm) -> Povm:
    if povm.barred:
        return povm
    s = d.rho0_sqrt
    return Povm(congruence(s, povm.m0), congruence(s, povm.m1), congruence(s, povm.m2), barred=True)


def unbar_povm(d: DerivedData, bar: Povm, tol: float = 1e-8) -> Povm:
    """``M_i = rho0**(-1/2) Mbar_i rho0**(-1/2)``.

    Raises :class:`CompletenessViolation` if the barred elements do not sum
    to ``rho0``.
    """
    dev = (bar.total() - d.rho0).max_abs()
    if dev > tol:
        raise CompletenessViolation(f"sum of barred elements deviates from rho0 by {dev:.3e}")
    s = d.rho0_inv_sqrt
    return Povm(congruence(s, bar.m0), congruence(s, bar.m1), congruence(s, bar.m2), barred=False)


def worked_example() -> TwoStateEnsemble:
    """Built-in mixed-state pair (q1 = 0.4) used by the demo and the regression tests."""
    rho1 = HermitianOp(0.15, 0.85, complex(-0.30, 0.10))
    rho2 = HermitianOp(0.80, 0.20, complex(-0.30, 0.05))
    return TwoStateEnsemble(0.4, 0.6, rho1, rho2)
