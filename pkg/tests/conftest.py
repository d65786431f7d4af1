import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pbmoduli import LatticeTau, ModuliConfig, WeierstrassContext

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

TAUS = [1j, 0.3 + 1.1j]
POINTS = (0.11 + 0.07j, 0.53 + 0.41j, 0.29 + 0.83j)


@pytest.fixture(params=TAUS, ids=["tau=i", "tau=0.3+1.1i"])
def tau(request):
    return request.param


@pytest.fixture
def lat(tau):
    return LatticeTau(tau)


@pytest.fixture
def ctx(lat):
    return WeierstrassContext(lat)


@pytest.fixture
def cfg(tau):
    return ModuliConfig.from_values(tau, POINTS)


@pytest.fixture
def rng():
    return np.random.default_rng(42)
