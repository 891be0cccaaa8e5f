import math

import pytest
from hypothesis import settings

from gouywave import make_spec

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def resonant():
    return lambda gamma=0.0, omega=1.0: make_spec(omega, omega, gamma)


TWO_PI = 2 * math.pi
