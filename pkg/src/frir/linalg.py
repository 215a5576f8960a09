"""Closed-form algebra for 2x2 complex Hermitian operators.

Everything here works on Python scalars rather than numpy arrays: at this
size the interpreter overhead of ``np.linalg`` dominates, and the closed
forms are exact up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .config import TOL
from .errors import NotPsd, SingularOperator

__all__ = [
    "HermitianOp",
    "BlochVector",
    "SpectralPair",
    "IDENTITY",
    "ZERO",
    "from_bloch",
    "to_bloch",
    "spectral_2x2",
    "spectral_fn",
    "congruence",
    "is_psd",
    "projector",
    "outer",
]


@dataclass(frozen=True)
class HermitianOp:
    """``[[a11, a12], [conj(a12), a22]]``; Hermitian by construction."""

    a11: float
    a22: float
    a12: complex = 0j

    @classmethod
    def from_array(cls, m, check: bool = True, tol: float = 1e-12) -> "HermitianOp":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        if check:
            skew = max(abs(m[0, 0].imag), abs(m[1, 1].imag), abs(m[0, 1] - m[1, 0].conjugate()))
            if skew > tol:
                raise ValueError(f"matrix is not Hermitian (deviation {skew:.3e})")
        return cls(float(m[0, 0].real), float(m[1, 1].real), complex(0.5 * (m[0, 1] + m[1, 0].conjugate())))

    @property
    def a21(self) -> complex:
        return self.a12.conjugate()

    def to_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=complex)

    @property
    def trace(self) -> float:
        return self.a11 + self.a22

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - abs(self.a12) ** 2

    def __add__(self, other: "HermitianOp") -> "HermitianOp":
        return HermitianOp(self.a11 + other.a11, self.a22 + other.a22, self.a12 + other.a12)

    def __sub__(self, other: "HermitianOp") -> "HermitianOp":
        return HermitianOp(self.a11 - other.a11, self.a22 - other.a22, self.a12 - other.a12)

    def __neg__(self) -> "HermitianOp":
        return HermitianOp(-self.a11, -self.a22, -self.a12)

    def __mul__(self, s: float) -> "HermitianOp":
        s = float(s)
        return HermitianOp(s * self.a11, s * self.a22, s * self.a12)

    __rmul__ = __mul__

    def inner(self, other: "HermitianOp") -> float:
        """``tr[self @ other]`` (real for Hermitian pairs)."""
        return self.a11 * other.a11 + self.a22 * other.a22 + 2.0 * (self.a12 * other.a21).real

    def expect(self, vec) -> complex:
        """``<vec| self |vec>``; ``vec`` is a length-2 complex sequence."""
        return sandwich(vec, self, vec)

    def max_abs(self) -> float:
        return max(abs(self.a11), abs(self.a22), abs(self.a12))

    def __repr__(self) -> str:
        return f"HermitianOp(a11={self.a11:.6g}, a22={self.a22:.6g}, a12={self.a12:.6g})"


IDENTITY = HermitianOp(1.0, 1.0, 0j)
ZERO = HermitianOp(0.0, 0.0, 0j)


class BlochVector(NamedTuple):
    x: float
    y: float
    z: float

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class SpectralPair:
    eigenvalue_low: float
    eigenvalue_high: float
    eigvec_low: tuple[complex, complex]
    eigvec_high: tuple[complex, complex]


def from_bloch(v, weight: float = 1.0) -> HermitianOp:
    """``weight * (I + v.sigma) / 2``."""
    x, y, z = (float(c) for c in v)
    h = 0.5 * weight
    return HermitianOp(h * (1.0 + z), h * (1.0 - z), complex(h * x, -h * y))


def to_bloch(h: HermitianOp) -> tuple[float, BlochVector]:
    """Inverse of :func:`from_bloch`: returns ``(trace, v)``."""
    t = h.trace
    if t == 0.0:
        return 0.0, BlochVector(0.0, 0.0, 0.0)
    return t, BlochVector(2.0 * h.a12.real / t, -2.0 * h.a12.imag / t, (h.a11 - h.a22) / t)


def _fix_phase(x1: complex, x2: complex) -> tuple[complex, complex]:
    n = math.hypot(abs(x1), abs(x2))
    x1, x2 = x1 / n, x2 / n
    if x1 != 0:
        ph = abs(x1) / x1
    else:
        ph = abs(x2) / x2
    x1, x2 = x1 * ph, x2 * ph
    if x1 != 0:
        x1 = complex(abs(x1), 0.0)
    else:
        x2 = complex(abs(x2), 0.0)
    return x1, x2


def spectral_2x2(h: HermitianOp) -> SpectralPair:
    """Eigen-decomposition via trace/discriminant.

    Eigenvectors are phase-fixed so the first nonzero component is real and
    positive.
    """
    a, d, b = h.a11, h.a22, h.a12
    m = 0.5 * (a + d)
    half = 0.5 * (a - d)
    r = math.hypot(half, abs(b))
    lo, hi = m - r, m + r
    if b == 0:
        if a >= d:
            vh, vl = (1 + 0j, 0j), (0j, 1 + 0j)
        else:
            vh, vl = (0j, 1 + 0j), (1 + 0j, 0j)
        return SpectralPair(lo, hi, vl, vh)
    # pick the better-conditioned row of (H - hi I) x = 0
    if half >= 0:
        vh = _fix_phase(complex(half + r), b.conjugate())
    else:
        vh = _fix_phase(b, complex(r - half))
    vl = _fix_phase(-vh[1].conjugate(), vh[0].conjugate())
    return SpectralPair(lo, hi, vl, vh)


def outer(x, y) -> tuple[complex, complex, complex, complex]:
    """Entries of ``|x><y|`` as (00, 01, 10, 11)."""
    return (x[0] * y[0].conjugate(), x[0] * y[1].conjugate(), x[1] * y[0].conjugate(), x[1] * y[1].conjugate())


def projector(x) -> HermitianOp:
    """``|x><x|`` for a (not necessarily normalised) 2-vector."""
    return HermitianOp(abs(x[0]) ** 2, abs(x[1]) ** 2, x[0] * x[1].conjugate())


def sandwich(x, h: HermitianOp, y) -> complex:
    """``<x| h |y>``."""
    hy0 = h.a11 * y[0] + h.a12 * y[1]
    hy1 = h.a21 * y[0] + h.a22 * y[1]
    return x[0].conjugate() * hy0 + x[1].conjugate() * hy1


_FUNCS: dict[str, Callable[[float], float]] = {
    "sqrt": math.sqrt,
    "inv_sqrt": lambda x: 1.0 / math.sqrt(x),
    "inv": lambda x: 1.0 / x,
    "abs": abs,
}


def spectral_fn(h: HermitianOp, fn: str, tol_sing: float | None = None, tol_psd: float | None = None) -> HermitianOp:
    """Apply ``fn`` (``sqrt``, ``inv_sqrt``, ``inv`` or ``abs``) to the spectrum of ``h``."""
    if fn not in _FUNCS:
        raise ValueError(f"unknown spectral function {fn!r}")
    tol_sing = TOL.sing if tol_sing is None else tol_sing
    tol_psd = TOL.psd if tol_psd is None else tol_psd
    sp = spectral_2x2(h)
    lo, hi = sp.eigenvalue_low, sp.eigenvalue_high
    if fn == "sqrt":
        if lo < -tol_psd:
            raise NotPsd(f"sqrt of indefinite operator (min eigenvalue {lo:.3e})")
        lo, hi = max(lo, 0.0), max(hi, 0.0)
    elif fn in ("inv_sqrt", "inv") and lo < tol_sing:
        raise SingularOperator(f"{fn} of operator with eigenvalue {lo:.3e} < {tol_sing:.1e}")
    f = _FUNCS[fn]
    return f(lo) * projector(sp.eigvec_low) + f(hi) * projector(sp.eigvec_high)


def _matmul(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def congruence(x: HermitianOp, m: HermitianOp) -> HermitianOp:
    """``x @ m @ x`` for Hermitian ``x``."""
    xe = (complex(x.a11), x.a12, x.a21, complex(x.a22))
    me = (complex(m.a11), m.a12, m.a21, complex(m.a22))
    p = _matmul(_matmul(xe, me), xe)
    return HermitianOp(p[0].real, p[3].real, 0.5 * (p[1] + p[2].conjugate()))


def min_eigenvalue(h: HermitianOp) -> float:
    return 0.5 * (h.a11 + h.a22) - math.hypot(0.5 * (h.a11 - h.a22), abs(h.a12))


def is_psd(h: HermitianOp, tol: float | None = None) -> bool:
    tol = TOL.psd if tol is None else tol
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return min_eigenvalue(h) >= -tol


def unit_phase(z: complex) -> complex:
    """``z / |z|``; 1 for ``z == 0``."""
    a = abs(z)
    return 1 + 0j if a == 0 else z / a


def bloch_norm_diff(a, b) -> float:
    return math.dist(tuple(a), tuple(b))

