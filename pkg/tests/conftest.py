from fractions import Fraction as F

import pytest

from opencells import fourier_motzkin


@pytest.fixture(autouse=True, scope="module")
def _fresh_caches():
    # feasibility caches are global; start each module cold so timings are honest
    fourier_motzkin.clear_caches()
    yield


def pt(*xs):
    return tuple(F(x) for x in xs)
