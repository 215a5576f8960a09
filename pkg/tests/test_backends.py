from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from frir import worked_example, solve_frir
from frir._accel import NUMBA_ENABLED
from frir.generate import random_ensemble
from frir.verify import lp_oracle, monte_carlo
from frir.verify.simplex import simplex_max

needs_numba = pytest.mark.skipif(not NUMBA_ENABLED, reason="numba disabled or unavailable")


@needs_numba
def test_lp_backends_agree(rng):
    for _ in range(8):
        ens = random_ensemble(rng)
        Q = float(rng.random() * 0.9)
        a = lp_oracle(ens, Q, 600, backend="numba")
        b = lp_oracle(ens, Q, 600, backend="numpy")
        assert a.status == b.status and a.iterations == b.iterations
        assert a.P_cor_lp == pytest.approx(b.P_cor_lp, abs=1e-12)


@needs_numba
def test_simplex_backends_same_path():
    rng = np.random.default_rng(5)
    A = np.vstack([rng.normal(size=(3, 20)), np.ones(20)])
    b = A @ rng.random(20)
    c = rng.normal(size=20)
    a = simplex_max(c, A, b, backend="numba")
    n = simplex_max(c, A, b, backend="numpy")
    assert a.iterations == n.iterations
    assert np.allclose(a.x, n.x, atol=1e-12)


@needs_numba
def test_monte_carlo_backends_identical():
    ens = worked_example()
    povm = solve_frir(ens, 0.62).povm
    a = monte_carlo(ens, povm, 100_000, seed=11, backend="numba")
    b = monte_carlo(ens, povm, 100_000, seed=11, backend="numpy")
    assert np.array_equal(a.counts, b.counts)


def test_unknown_backend():
    with pytest.raises(ValueError):
        simplex_max(np.ones(1), np.ones((1, 1)), np.ones(1), backend="fortran")


def test_env_flag_selects_numpy():
    env = dict(os.environ, FRIR_DISABLE_NUMBA="1")
    code = (
        "from frir._accel import NUMBA_ENABLED, default_backend\n"
        "from frir import worked_example\n"
        "from frir.verify import lp_oracle\n"
        "assert not NUMBA_ENABLED\n"
        "print(default_backend(), lp_oracle(worked_example(), 0.3, 200).status)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "optimal"]
