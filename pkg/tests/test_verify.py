from __future__ import annotations

import numpy as np
import pytest

from frir import derive, solve_frir
from frir.ensemble import Povm, bar_povm
from frir.errors import InvalidPovm, QOutOfRange
from frir.generate import random_ensemble
from frir.linalg import ZERO, from_bloch, projector
from frir.verify import (
    born_table,
    certify,
    check_kkt,
    compare_oracle,
    directions,
    dual_certificate,
    expected_rates,
    lp_oracle,
    monte_carlo,
)
from frir.verify.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, simplex_max

scipy_optimize = pytest.importorskip("scipy.optimize")


class TestKkt:
    def test_interior_certificate(self, ex, ex_d):
        sol = solve_frir(ex, 0.3)
        rep = certify(ex, sol)
        assert rep.passed and rep.worst() <= 1e-9

    def test_perturbed_measurement_fails(self, ex, ex_d):
        sol = solve_frir(ex, 0.3)
        barM = bar_povm(ex_d, sol.povm)
        bad = Povm(barM.m0 + 1e-3 * projector(ex_d.nu1), barM.m1, barM.m2, barred=True)
        taus = dual_certificate(ex_d, sol.dual_kind, sol.q_used, sol.x)
        rep = check_kkt(ex_d, sol.q_used, bad, taus)
        assert not rep.passed
        assert rep.completeness_residual > 1e-4

    def test_wrong_q_breaks_dual(self, ex, ex_d):
        sol = solve_frir(ex, 0.3)
        taus = dual_certificate(ex_d, "all_nonzero", sol.q_used + 0.01)
        rep = check_kkt(ex_d, sol.q_used + 0.01, bar_povm(ex_d, sol.povm), taus)
        assert not rep.passed

    def test_random_solutions_certified(self, rng):
        for _ in range(60):
            ens = random_ensemble(rng, pure=bool(rng.integers(2)))
            for Q in np.linspace(0, 0.97, 15):
                rep = certify(ens, solve_frir(ens, Q))
                assert rep.passed, (ens, Q, rep)


class TestSimplex:
    @pytest.mark.parametrize("seed", range(15))
    def test_matches_scipy(self, seed):
        rng = np.random.default_rng(seed)
        m, n = 4, 30
        A = rng.normal(size=(m, n))
        x0 = rng.random(n)
        b = A @ x0
        c = rng.normal(size=n)
        # bound the feasible set so the LP has a finite optimum
        A = np.vstack([A, np.ones(n)])
        b = np.append(b, x0.sum())
        ref = scipy_optimize.linprog(-c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
        res = simplex_max(c, A, b)
        assert res.status == OPTIMAL
        assert res.objective == pytest.approx(-ref.fun, abs=1e-8)
        assert np.abs(A @ res.x - b).max() <= 1e-8 and res.x.min() >= 0

    def test_infeasible(self):
        res = simplex_max(np.ones(2), np.array([[1.0, 1.0]]), np.array([-1.0]))
        assert res.status == INFEASIBLE

    def test_unbounded(self):
        res = simplex_max(np.array([1.0, 0.0]), np.array([[1.0, -1.0]]), np.array([0.0]))
        assert res.status == UNBOUNDED

    def test_redundant_row(self):
        A = np.array([[1.0, 1.0, 0.0], [2.0, 2.0, 0.0], [0.0, 1.0, 1.0]])
        b = np.array([1.0, 2.0, 1.0])
        res = simplex_max(np.array([1.0, 2.0, 0.5]), A, b)
        assert res.status == OPTIMAL and res.objective == pytest.approx(2.0)


class TestOracle:
    def test_directions_are_unit_and_nested(self):
        d = directions(1000)
        assert np.allclose(np.linalg.norm(d, axis=1), 1.0)
        assert np.array_equal(directions(400), d[:400])
        assert np.allclose(d[0::2], -d[1::2])

    def test_monotone_in_directions(self, ex):
        vals = [lp_oracle(ex, 0.3, n).P_cor_lp for n in (100, 400, 1600)]
        assert vals[0] <= vals[1] + 1e-12 <= vals[2] + 2e-12
        assert solve_frir(ex, 0.3).P_cor - vals[-1] <= 1e-3

    def test_achieves_Q(self, ex):
        r = lp_oracle(ex, 0.4, 500)
        assert r.status == OPTIMAL and r.achieved_Q == pytest.approx(0.4, abs=1e-9)

    def test_compare_example(self, ex):
        rep = compare_oracle(ex, np.linspace(0, 0.95, 8))
        assert rep.passed and rep.min_gap >= -1e-9 and rep.max_gap <= 1e-3

    def test_rejects_bad_input(self, ex):
        with pytest.raises(QOutOfRange):
            lp_oracle(ex, 1.0)
        with pytest.raises(ValueError):
            lp_oracle(ex, 0.2, 10)


class TestMonteCarlo:
    def test_within_four_sigma(self, ex):
        sol = solve_frir(ex, 0.3)
        mc = monte_carlo(ex, sol.povm, 200_000, seed=3)
        assert abs(mc.empirical_Q - sol.Q) <= 4 * mc.stderr_Q
        assert abs(mc.empirical_R_cor - sol.R_cor) <= 4 * mc.stderr_R_cor
        assert mc.counts.sum() == 200_000

    def test_seeded_reproducible(self, ex):
        povm = solve_frir(ex, 0.5).povm
        a = monte_carlo(ex, povm, 10_000, seed=7)
        b = monte_carlo(ex, povm, 10_000, seed=7)
        assert np.array_equal(a.counts, b.counts)

    def test_error_shrinks_like_inverse_sqrt(self, ex):
        sol = solve_frir(ex, 0.3)
        rms = []
        for n in (2_000, 200_000):
            dev = [monte_carlo(ex, sol.povm, n, seed=s).empirical_Q - sol.Q for s in range(30)]
            rms.append(np.sqrt(np.mean(np.square(dev))))
        # a factor 100 in samples should cut the spread by about 10
        assert 5 < rms[0] / rms[1] < 20

    def test_expected_rates(self, ex):
        sol = solve_frir(ex, 0.62)
        Q, P, R = expected_rates(ex, sol.povm)
        assert (Q, P, R) == pytest.approx((sol.Q, sol.P_cor, sol.R_cor), abs=1e-10)

    def test_invalid_povm(self, ex):
        bad = Povm(from_bloch((0, 0, 1)), from_bloch((0, 0, 1)), ZERO)
        with pytest.raises(InvalidPovm):
            born_table(ex, bad)
