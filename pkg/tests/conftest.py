import math

import pytest

from koenigslab.models import (
    AffineOfModel,
    HalfPlane,
    SlitPlane,
    Strip,
    TwoSlit,
    build_model,
)
from koenigslab.semigroup import backward_orbit


@pytest.fixture(scope="session")
def strip_model():
    return build_model(Strip(-math.pi / 2, math.pi / 2))


@pytest.fixture(scope="session")
def halfplane_model():
    return build_model(HalfPlane(-1.0))


@pytest.fixture(scope="session")
def slitplane_model():
    return build_model(SlitPlane(-1.0, 0.0))


@pytest.fixture(scope="session")
def twoslit_model():
    return build_model(TwoSlit(-1.0, math.pi))


@pytest.fixture(scope="session")
def affine_model():
    return build_model(AffineOfModel(2.0, 1.0 + 0.5j, TwoSlit(-1.0, math.pi)))


@pytest.fixture(scope="session")
def strip_orbit(strip_model):
    return backward_orbit(strip_model, 0.0, 200.0, 0.25)


@pytest.fixture(scope="session")
def twoslit_orbit(twoslit_model):
    return backward_orbit(twoslit_model, 0.0, 200.0, 0.25)


@pytest.fixture(scope="session")
def halfplane_orbit(halfplane_model):
    return backward_orbit(halfplane_model, 0.0, 1000.0, 0.5)


@pytest.fixture(scope="session")
def slitplane_orbit(slitplane_model):
    z0 = slitplane_model.chart.inverse(1j)
    return backward_orbit(slitplane_model, z0, 2000.0, 1.0)


@pytest.fixture(scope="session")
def affine_orbit(affine_model):
    z0 = affine_model.chart.inverse(0.0)
    return backward_orbit(affine_model, z0, 200.0, 0.25)
