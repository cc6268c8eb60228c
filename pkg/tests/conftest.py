import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def point_arrays(min_n=1, max_n=40, lo=-3.0, hi=3.0):
    """Distinct points on a fine grid, so duplicates and near-ties both occur."""
    coord = st.integers(int(lo * 64), int(hi * 64)).map(lambda v: v / 64)
    return st.lists(st.tuples(coord, coord), min_size=min_n, max_size=max_n,
                    unique=True).map(lambda pts: np.array(pts, dtype=np.float64))


def float_point_arrays(min_n=1, max_n=40, lo=-3.0, hi=3.0):
    coord = st.floats(lo, hi, allow_nan=False, allow_infinity=False)
    return st.lists(st.tuples(coord, coord), min_size=min_n, max_size=max_n,
                    unique=True).map(lambda pts: np.array(pts, dtype=np.float64))


def brute_udg_edges(xy):
    n = len(xy)
    return {(i, j) for i in range(n) for j in range(i + 1, n)
            if (xy[i, 0] - xy[j, 0]) ** 2 + (xy[i, 1] - xy[j, 1]) ** 2 <= 1.0 + 1e-12}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
