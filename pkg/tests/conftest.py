import pytest
from hypothesis import HealthCheck, settings

from lineadmit.fixtures import example_no_cycle, example_two_cycles
from lineadmit.incidence import build_incidence

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def ex1():
    return build_incidence(example_no_cycle())


@pytest.fixture(scope="session")
def ex2():
    return build_incidence(example_two_cycles())
