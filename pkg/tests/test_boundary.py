from __future__ import annotations

import numpy as np
import pytest

from frir import derive, solve_frir
from frir.boundary import boundary_solution, epsilon_range, helstrom_povm, q0_lower, q0_upper
from frir.errors import EpsilonOutOfRange, QOutOfInterval
from frir.generate import random_equal_c_ensemble
from frir.verify import dual_certificate, check_kkt, lp_oracle
from frir.ensemble import bar_povm


def equal_c_case_a(rng):
    while True:
        ens = random_equal_c_ensemble(rng)
        d = derive(ens)
        if d.rho11 < abs(d.rho12) <= d.rho22:
            return ens, d


class TestUpper:
    def test_example(self, ex_d):
        bc = q0_upper(ex_d)
        assert bc.regime == "C1_lt_C2"
        assert bc.q0 == pytest.approx(0.9657, abs=5e-4)
        assert bc.interval.lo == pytest.approx(0.6635, abs=1e-3) and bc.interval.hi == 1.0

    def test_orthogonal(self, orthogonal):
        bc = q0_upper(derive(orthogonal))
        assert bc.regime == "C1_eq_C2_case_c"
        assert (bc.interval.lo, bc.interval.hi) == pytest.approx((0.0, 1.0))

    def test_case_a_endpoint_against_lp(self, rng):
        ens, d = equal_c_case_a(rng)
        bc = q0_upper(d)
        assert bc.regime == "C1_eq_C2_case_a"
        assert bc.interval.lo == pytest.approx(d.Q1)
        C = d.C2
        # on the plateau the LP reaches R = C; below it the analytic curve is lower and the LP never beats it
        for Q in np.linspace(bc.interval.lo, 0.95, 5):
            lp = lp_oracle(ens, Q, 2000)
            assert C * (1 - Q) - 1e-3 <= lp.P_cor_lp <= C * (1 - Q) + 1e-9
        for Q in np.linspace(0.0, bc.interval.lo, 6)[:-1]:
            sol = solve_frir(ens, Q)
            assert sol.R_cor < C
            assert lp_oracle(ens, Q, 2000).P_cor_lp <= sol.P_cor + 1e-9

    def test_kkt_with_plateau_dual(self, ex_d):
        d = ex_d
        bc = q0_upper(d)
        for Q in (bc.interval.lo, 0.8, 0.99):
            bs = boundary_solution(d, bc, Q)
            assert bs.R_cor == d.C2 and bs.unique
            taus = dual_certificate(d, "upper", d.C2)
            rep = check_kkt(d, d.C2, bs.barM, taus)
            assert rep.passed and rep.worst() <= 1e-12

    def test_family_members_all_optimal(self, rng):
        ens, d = equal_c_case_a(rng)
        bc = q0_upper(d)
        Q = 0.5 * (bc.interval.lo + 1.0)
        lo, hi = epsilon_range(d, bc, Q)
        assert lo < hi
        for eps in np.linspace(lo, hi, 5):
            bs = boundary_solution(d, bc, Q, eps)
            assert not bs.unique and bs.epsilon == pytest.approx(eps)
            rep = check_kkt(d, bc.q0, bs.barM, dual_certificate(d, "upper", bc.q0))
            assert rep.passed
            assert bs.barM.m0.trace == pytest.approx(Q, abs=1e-12)
        with pytest.raises(EpsilonOutOfRange):
            boundary_solution(d, bc, Q, hi + 1e-3)

    def test_outside_interval(self, ex_d):
        with pytest.raises(QOutOfInterval):
            boundary_solution(ex_d, q0_upper(ex_d), 0.3)

    def test_unique_regime_rejects_epsilon(self, ex_d):
        with pytest.raises(EpsilonOutOfRange):
            boundary_solution(ex_d, q0_upper(ex_d), 0.8, 0.1)


class TestLower:
    def test_example(self, ex_d):
        bc = q0_lower(ex_d)
        assert bc.regime == "rho12_nonzero"
        assert bc.q0 == pytest.approx(0.6940, abs=5e-4)
        assert bc.interval.degenerate_point and bc.interval.lo == 0.0

    def test_helstrom(self, ex_d):
        bs = boundary_solution(ex_d, q0_lower(ex_d), 0.0)
        assert bs.R_cor == pytest.approx(0.82573, abs=1e-5)
        p = helstrom_povm(ex_d)
        assert p.m0.max_abs() == 0.0
        # chi is the smallest eigenvalue of the normalised Helstrom dual
        taus = dual_certificate(ex_d, "helstrom", ex_d.chi)
        assert check_kkt(ex_d, ex_d.chi, bs.barM, taus).passed

    def test_low_c1(self, low_c1):
        d = derive(low_c1)
        bc = q0_lower(d)
        assert d.C1 < 0.5 < d.C2 and not d.swapped
        assert bc.regime == "C1_le_half"
        assert bc.q0 == pytest.approx(1 - d.C1)
        assert bc.interval.hi == pytest.approx(1 - d.Q2)
        # on [0, 1 - Q2] the optimum is P_cor = q2 - (1 - C1) Q; the LP agrees from below
        for Q in np.linspace(0, bc.interval.hi, 5):
            line = d.q2 - (1 - d.C1) * Q
            assert solve_frir(low_c1, Q).P_cor == pytest.approx(line, abs=1e-12)
            lp = lp_oracle(low_c1, Q, 2000).P_cor_lp
            assert line - 1e-3 <= lp <= line + 1e-9
        # the line is a supporting line of the concave optimum; beyond the interval it lifts off
        Q = bc.interval.hi + 0.1
        assert solve_frir(low_c1, Q).P_cor < d.q2 - (1 - d.C1) * Q - 1e-6

    def test_orthogonal(self, orthogonal):
        bc = q0_lower(derive(orthogonal))
        assert bc.regime == "rho12_zero" and bc.q0 == pytest.approx(1.0)
        assert (bc.interval.lo, bc.interval.hi) == pytest.approx((0.0, 1.0))

    def test_low_c1_dual(self, low_c1):
        d = derive(low_c1)
        bc = q0_lower(d)
        bs = boundary_solution(d, bc, 0.5 * bc.interval.hi)
        rep = check_kkt(d, bc.q0, bs.barM, dual_certificate(d, "lower_half", bc.q0))
        assert rep.passed and rep.worst() <= 1e-12
