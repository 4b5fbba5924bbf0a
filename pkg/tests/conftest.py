import random

import pytest

from curvelog import curve
from curvelog.integrator import IntegratorConfig


@pytest.fixture
def poles_0():
    return curve.PoleSet.from_strings('0')


@pytest.fixture
def poles_01():
    return curve.PoleSet.from_strings('0,1')


@pytest.fixture
def poles_complex():
    return curve.PoleSet.from_strings('0,1,1/2+i')


@pytest.fixture
def rng():
    return random.Random(20240517)


@pytest.fixture
def tight():
    return IntegratorConfig(rtol=1e-12, atol=1e-14)
