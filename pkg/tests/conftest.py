from __future__ import annotations

import numpy as np
import pytest

from frir import TwoStateEnsemble, derive, worked_example
from frir.generate import diagonal_ensemble, orthogonal_ensemble

# C1 < 1/2 < C2 without relabelling; rho12 != 0
LOW_C1 = (0.2, (-0.3, -0.4, 0.5), (-0.2, 0.1, 0.5))
# C1 > C2 in the given labels, so derive() swaps them
SWAPPED = (0.75, (-0.4, 0.3, -0.3), (-0.9, 0.2, -0.1))


@pytest.fixture
def ex():
    return worked_example()


@pytest.fixture
def ex_d(ex):
    return derive(ex)


@pytest.fixture
def low_c1():
    q1, v1, v2 = LOW_C1
    return TwoStateEnsemble.from_bloch(q1, v1, v2)


@pytest.fixture
def swapped_ens():
    q1, v1, v2 = SWAPPED
    return TwoStateEnsemble.from_bloch(q1, v1, v2)


@pytest.fixture
def orthogonal():
    return orthogonal_ensemble()


@pytest.fixture
def diag_high():
    """rho12 = 0 with 1/2 < C1 < C2."""
    return diagonal_ensemble(0.5, 0.9, 0.2)


@pytest.fixture
def diag_low():
    """rho12 = 0 with C1 < 1/2 < C2."""
    return diagonal_ensemble(0.2, 0.6, 0.3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
