import numpy as np
import pytest

from hardysplit.geometry import CurveSpec, build_curve

SQUARE = [(1, 1), (-1, 1), (-1, -1), (1, -1)]


@pytest.fixture(scope="session")
def disc():
    return build_curve(CurveSpec.disc(n=256))


@pytest.fixture(scope="session")
def ellipse():
    return build_curve(CurveSpec.ellipse(2, 1, n=256))


@pytest.fixture(scope="session")
def star():
    return build_curve(CurveSpec.star(n=512))


@pytest.fixture(scope="session")
def square():
    return build_curve(CurveSpec.polygon(SQUARE))


@pytest.fixture(scope="session")
def curves(disc, ellipse, star, square):
    return {"disc": disc, "ellipse": ellipse, "star": star, "square": square}


def band_limited(curve, M, rng):
    """Random trigonometric polynomial of degree M in the parameter."""
    k = np.arange(-M, M + 1)
    a = rng.standard_normal(k.size) + 1j * rng.standard_normal(k.size)
    return np.exp(1j * np.outer(curve.t, k)) @ a
