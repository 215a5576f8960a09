from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frir.errors import NotPsd, SingularOperator
from frir.linalg import (
    IDENTITY,
    HermitianOp,
    congruence,
    from_bloch,
    is_psd,
    min_eigenvalue,
    spectral_2x2,
    spectral_fn,
    to_bloch,
)


def close(a: HermitianOp, b: HermitianOp, tol: float) -> bool:
    return (a - b).max_abs() <= tol


def random_herm(rng, psd=False, lo=1e-6):
    if psd:
        w = rng.uniform(lo, 1.0, size=2)
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        z /= np.linalg.norm(z)
        u = np.array([[z[0], -z[1].conjugate()], [z[1], z[0].conjugate()]])
        return HermitianOp.from_array(u @ np.diag(w) @ u.conj().T)
    return HermitianOp(rng.normal(), rng.normal(), complex(rng.normal(), rng.normal()))


def reconstruct(sp):
    def proj(v):
        return np.outer(v, np.conj(v))

    return sp.eigenvalue_low * proj(sp.eigvec_low) + sp.eigenvalue_high * proj(sp.eigvec_high)


class TestBloch:
    def test_north_pole(self):
        assert from_bloch((0, 0, 1)) == HermitianOp(1.0, 0.0, 0j)

    def test_maximally_mixed(self):
        assert close(from_bloch((0, 0, 0)), 0.5 * IDENTITY, 0)

    def test_example_state_matrix(self):
        h = from_bloch((-0.6, -0.2, -0.7))
        assert h.a11 == pytest.approx(0.15, abs=1e-15)
        assert h.a12 == pytest.approx(complex(-0.30, 0.10), abs=1e-15)

    def test_weight_scales_trace(self):
        assert from_bloch((0.1, 0.2, 0.3), 0.25).trace == pytest.approx(0.25)

    def test_to_bloch_examples(self):
        assert to_bloch(HermitianOp(1.0, 0.0)) == (1.0, (0.0, 0.0, 1.0))
        t, v = to_bloch(0.5 * IDENTITY)
        assert t == 1.0 and v.norm() == 0.0
        rho2 = HermitianOp(0.80, 0.20, complex(-0.30, 0.05))
        t, v = to_bloch(rho2)
        assert t == pytest.approx(1.0)
        assert np.allclose(v.as_array(), (-0.6, -0.1, 0.6), atol=1e-14)

    def test_round_trip_random(self, rng):
        for _ in range(1000):
            h = random_herm(rng)
            t, v = to_bloch(h)
            if t == 0:
                continue
            assert close(from_bloch(v, t), h, 1e-14 * max(1.0, h.max_abs() / abs(t)))


class TestSpectral:
    def test_diagonal(self):
        sp = spectral_2x2(HermitianOp(3.0, 1.0))
        assert (sp.eigenvalue_low, sp.eigenvalue_high) == (1.0, 3.0)
        assert sp.eigvec_high == (1, 0) and sp.eigvec_low == (0, 1)

    def test_degenerate(self):
        sp = spectral_2x2(0.5 * IDENTITY)
        assert sp.eigenvalue_low == sp.eigenvalue_high == 0.5
        v, w = np.array(sp.eigvec_low), np.array(sp.eigvec_high)
        assert abs(np.vdot(v, w)) < 1e-15 and np.linalg.norm(v) == pytest.approx(1.0)

    def test_pauli_x(self):
        sp = spectral_2x2(HermitianOp(0.0, 0.0, 1 + 0j))
        assert (sp.eigenvalue_low, sp.eigenvalue_high) == pytest.approx((-1.0, 1.0))
        s = 1 / math.sqrt(2)
        assert np.allclose(sp.eigvec_high, (s, s)) and np.allclose(sp.eigvec_low, (s, -s))

    def test_phase_convention(self, rng):
        for _ in range(200):
            sp = spectral_2x2(random_herm(rng))
            for v in (sp.eigvec_low, sp.eigvec_high):
                first = v[0] if v[0] != 0 else v[1]
                assert first.imag == 0 and first.real > 0

    def test_reconstruction_and_orthonormality(self, rng):
        for _ in range(1000):
            h = random_herm(rng)
            sp = spectral_2x2(h)
            assert sp.eigenvalue_low <= sp.eigenvalue_high
            assert np.abs(reconstruct(sp) - h.to_array()).max() <= 1e-13 * max(1.0, h.max_abs())
            assert abs(np.vdot(sp.eigvec_low, sp.eigvec_high)) <= 1e-12

    @settings(max_examples=200, deadline=None)
    @given(
        st.floats(-10, 10),
        st.floats(-10, 10),
        st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    )
    def test_matches_numpy(self, a, d, b):
        h = HermitianOp(a, d, b)
        ref = np.linalg.eigvalsh(h.to_array())
        sp = spectral_2x2(h)
        assert np.allclose([sp.eigenvalue_low, sp.eigenvalue_high], ref, atol=1e-12 * max(1.0, h.max_abs()))


class TestSpectralFn:
    def test_examples(self):
        assert close(spectral_fn(HermitianOp(4.0, 1.0), "sqrt"), HermitianOp(2.0, 1.0), 1e-15)
        assert close(spectral_fn(HermitianOp(4.0, 1.0), "inv_sqrt"), HermitianOp(0.5, 1.0), 1e-15)

    def test_rho0_inv_sqrt_is_inverse(self, ex):
        r = ex.rho0
        isq = spectral_fn(r, "inv_sqrt")
        assert close(congruence(isq, r), IDENTITY, 1e-12)

    def test_errors(self):
        with pytest.raises(NotPsd):
            spectral_fn(HermitianOp(1.0, -1e-6), "sqrt")
        with pytest.raises(SingularOperator):
            spectral_fn(HermitianOp(1.0, 1e-13), "inv_sqrt")
        with pytest.raises(SingularOperator):
            spectral_fn(HermitianOp(1.0, 0.0), "inv")
        with pytest.raises(ValueError):
            spectral_fn(IDENTITY, "log")

    def test_sqrt_squares_back(self, rng):
        for _ in range(300):
            h = random_herm(rng, psd=True)
            s = spectral_fn(h, "sqrt")
            assert close(congruence(s, IDENTITY), h, 1e-12)

    def test_inv_sqrt_identity(self, rng):
        for _ in range(300):
            h = random_herm(rng, psd=True)
            assert close(congruence(spectral_fn(h, "inv_sqrt"), h), IDENTITY, 1e-11)


class TestCongruenceAndPsd:
    def test_examples(self):
        m = HermitianOp(0.3, 0.7, 0.1 - 0.2j)
        assert congruence(IDENTITY, m) == m
        assert congruence(HermitianOp(2.0, 1.0), IDENTITY) == HermitianOp(4.0, 1.0)

    def test_round_trip(self, rng):
        for _ in range(200):
            r = random_herm(rng, psd=True, lo=0.05)
            m = random_herm(rng, psd=True)
            back = congruence(spectral_fn(r, "sqrt"), congruence(spectral_fn(r, "inv_sqrt"), m))
            assert close(back, m, 1e-12)

    def test_preserves_psd(self, rng):
        for _ in range(500):
            m = random_herm(rng, psd=True, lo=0.0)
            x = random_herm(rng)
            assert is_psd(congruence(x, m), 1e-12 * max(1.0, x.max_abs()) ** 2)

    def test_is_psd(self):
        assert is_psd(HermitianOp(1.0, 0.0), 0.0)
        assert not is_psd(HermitianOp(1.0, -1e-6), 1e-9)
        with pytest.raises(ValueError):
            is_psd(IDENTITY, -1.0)

    def test_min_eigenvalue(self):
        assert min_eigenvalue(HermitianOp(0.0, 0.0, 1 + 0j)) == pytest.approx(-1.0)
