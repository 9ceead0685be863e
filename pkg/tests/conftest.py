import pytest
from hypothesis import settings

from veronucleus.gf import make_field

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def gf4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def gf3():
    return make_field(3, 1)
