"""Both kernel implementations must agree on arbitrary inputs."""

import numpy as np
import pytest

from momo.kernels import HAVE_NUMBA, IMPLEMENTATIONS

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")


def _random_case(rng, n=60, m=4):
    F = rng.random((n, m))
    degree = np.where(rng.random(n) < 0.3, rng.random(n), 0.0)
    return F, degree


@pytest.mark.parametrize("seed", range(5))
def test_domination_matrix_paths_agree(seed):
    rng = np.random.default_rng(seed)
    F, degree = _random_case(rng)
    a = IMPLEMENTATIONS["domination_matrix"]["numpy"](F, degree)
    b = IMPLEMENTATIONS["domination_matrix"]["numba"](F, degree)
    np.testing.assert_array_equal(a, b)


@pytest.mark.parametrize("seed", range(5))
def test_mask_and_ranks_paths_agree(seed):
    rng = np.random.default_rng(100 + seed)
    F, degree = _random_case(rng)
    np.testing.assert_array_equal(
        IMPLEMENTATIONS["non_dominated_mask"]["numpy"](F, degree),
        IMPLEMENTATIONS["non_dominated_mask"]["numba"](F, degree),
    )
    np.testing.assert_array_equal(
        IMPLEMENTATIONS["front_ranks"]["numpy"](F, degree),
        IMPLEMENTATIONS["front_ranks"]["numba"](F, degree),
    )


@pytest.mark.parametrize("seed", range(3))
def test_sampling_paths_agree(seed):
    rng = np.random.default_rng(200 + seed)
    P = rng.random((40, 3))
    S = rng.random((5000, 3))
    np.testing.assert_array_equal(
        IMPLEMENTATIONS["any_dominating"]["numpy"](P, S),
        IMPLEMENTATIONS["any_dominating"]["numba"](P, S),
    )
    weights = np.zeros(41)
    weights[1:8] = 1.0 / np.arange(1, 8)
    a = IMPLEMENTATIONS["mc_attribution"]["numpy"](P, S, weights)
    b = IMPLEMENTATIONS["mc_attribution"]["numba"](P, S, weights)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_grea_select_paths_agree(seed):
    rng = np.random.default_rng(300 + seed)
    G = rng.integers(0, 8, size=(50, 5)).astype(np.int64)
    gcpd = rng.random(50)
    need = int(rng.integers(1, 50))
    np.testing.assert_array_equal(
        IMPLEMENTATIONS["grea_select"]["numpy"](G, gcpd, need),
        IMPLEMENTATIONS["grea_select"]["numba"](G, gcpd, need),
    )
