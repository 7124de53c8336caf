import pytest
from hypothesis import HealthCheck, settings

from necklie import one_dim_space, two_dim_space

settings.register_profile(
    "suite", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


@pytest.fixture(scope="session")
def sp1():
    return one_dim_space()


@pytest.fixture(scope="session")
def sp2():
    return two_dim_space()
