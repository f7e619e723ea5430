import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardysplit.cauchy import (
    BoundaryFunction,
    cauchy_boundary,
    cauchy_derivative_density,
    cauchy_exterior,
    cauchy_interior,
    cauchy_interior_derivative,
    cauchy_matrix,
    plemelj_jump,
    sample,
    sample_t,
    values_on,
)
from hardysplit.exceptions import CurveMismatchError, PointLocationError, UnsupportedCurveError
from hardysplit.geometry import CurveSpec, build_curve

from conftest import band_limited

# interior / exterior poles per curve kind
POLES = {"disc": (0.3 + 0.2j, 2.5), "ellipse": (0.5 - 0.3j, 3 + 1j),
         "star": (0.3, 2.5), "square": (0.3 + 0.4j, 2.5 - 1j)}
TOL = {"disc": 1e-8, "ellipse": 1e-8, "star": 1e-8, "square": 1e-4}


def test_interior_examples(disc, star):
    c64 = build_curve(CurveSpec.disc(n=64))
    assert abs(cauchy_interior(disc, np.ones(disc.n), 0.3 + 0.1j) - 1) < 1e-12
    assert abs(cauchy_interior(c64, c64.z**3, 0.5) - 0.125) < 1e-10
    u = sample(star, lambda w: 1 / (w - 3))
    assert abs(cauchy_interior(star, u, 0.2j) - 1 / (0.2j - 3)) < 1e-8


def test_exterior_examples(disc, ellipse):
    assert abs(cauchy_exterior(disc, np.ones(disc.n), 2)) < 1e-12
    assert abs(cauchy_exterior(disc, 1 / disc.z, 2) - 0.5) < 1e-10
    u = sample(ellipse, lambda w: 1 / (w - 0.5))
    z = 4 + 1j
    assert abs(cauchy_exterior(ellipse, u, z) - 1 / (z - 0.5)) < 1e-8


def test_side_errors(disc):
    with pytest.raises(PointLocationError):
        cauchy_interior(disc, np.ones(disc.n), 2)
    with pytest.raises(PointLocationError):
        cauchy_exterior(disc, np.ones(disc.n), 0.5)
    with pytest.raises(PointLocationError):
        cauchy_interior(disc, np.ones(disc.n), disc.z[0])


@pytest.mark.parametrize("n", [0, 1, 5, 30])
def test_boundary_nonnegative_frequencies_fixed(disc, n):
    u = np.exp(1j * n * disc.t)
    assert np.max(np.abs(cauchy_boundary(disc, u).values - u)) < 1e-10


@pytest.mark.parametrize("n", [1, 2, 7])
def test_boundary_negative_frequencies_annihilated(disc, n):
    u = np.exp(-1j * n * disc.t)
    assert np.max(np.abs(cauchy_boundary(disc, u).values)) < 1e-10


@pytest.mark.parametrize("kind", ["disc", "ellipse", "star", "square"])
def test_rational_exactness(curves, kind):
    c = curves[kind]
    a, b = POLES[kind]
    ua = sample(c, lambda w: 1 / (w - a))
    ub = sample(c, lambda w: 1 / (w - b))
    assert cauchy_boundary(c, ua).max_abs() < TOL[kind]
    assert (cauchy_boundary(c, ub) - ub).max_abs() < TOL[kind]


@pytest.mark.parametrize("kind", ["disc", "ellipse", "star", "square"])
def test_constant_fixed(curves, kind):
    c = curves[kind]
    one = cauchy_matrix(c)(np.ones(c.n))
    assert np.max(np.abs(one.values - 1)) < (1e-10 if c.is_smooth else 1e-8)


@pytest.mark.parametrize("kind", ["ellipse", "star", "square"])
def test_matrix_matches_matrix_free(curves, kind):
    c = curves[kind]
    u = band_limited(c, 8, np.random.default_rng(0))
    M = cauchy_matrix(c)
    assert M.shape == (c.n, c.n) and M.role == "boundary-cauchy"
    assert np.max(np.abs(M(u).values - cauchy_boundary(c, u).values)) < 1e-10


@pytest.mark.parametrize("kind", ["ellipse", "star"])
def test_projection_identity(curves, kind):
    c = curves[kind]
    rng = np.random.default_rng(1)
    for _ in range(3):
        h = cauchy_boundary(c, band_limited(c, 16, rng))
        assert (cauchy_boundary(c, h) - h).max_abs() < 1e-8


@pytest.mark.parametrize("kind", ["ellipse", "star"])
def test_interior_reproduction(curves, kind):
    c = curves[kind]
    u = band_limited(c, 8, np.random.default_rng(2))
    h = cauchy_boundary(c, u)
    z = np.array([0.1, 0.2 - 0.3j, -0.4j])
    assert np.max(np.abs(cauchy_interior(c, h, z) - cauchy_interior(c, u, z))) < 1e-8


def test_spectral_convergence():
    a = 0.9 + 0.5j  # close to the ellipse, so convergence is visible
    errs = []
    for n in (32, 64, 128):
        c = build_curve(CurveSpec.ellipse(n=n))
        u = sample(c, lambda w: 1 / (w - 2.2 * a))
        errs.append((cauchy_boundary(c, u) - u).max_abs())
    for e1, e2 in zip(errs, errs[1:]):
        assert e2 <= 10 * e1**2 + 1e-12


def test_near_boundary_subtraction_beats_plain_rule(ellipse):
    u = sample(ellipse, lambda w: w**2 + 1 / (w - 3))
    z = ellipse.z[10] - 0.2 * ellipse.spacing * ellipse.normal[10]
    exact = z**2 + 1 / (z - 3)
    corrected = cauchy_interior(ellipse, u, z)
    plain = cauchy_interior(ellipse, u, z, near_threshold=0.0)
    bary = cauchy_interior(ellipse, u, z, method="barycentric")
    assert abs(corrected - exact) < abs(plain - exact)
    assert abs(bary - exact) < 1e-12


def test_exterior_barycentric(star):
    u = sample(star, lambda w: 1 / (w - 0.3) + 2 / (w + 0.1j) ** 2)
    z = star.z[7] + 0.1 * star.spacing * star.normal[7]
    exact = 1 / (z - 0.3) + 2 / (z + 0.1j) ** 2
    assert abs(cauchy_exterior(star, u, z, method="barycentric") - exact) < 1e-10


def test_derivative_density_examples(disc, ellipse):
    g = cauchy_derivative_density(disc, disc.z**2)
    assert np.max(np.abs(g.values - 2 * disc.z)) < 1e-10
    assert cauchy_derivative_density(disc, np.ones(disc.n)).max_abs() < 1e-12
    u = ellipse.z**3
    g = cauchy_derivative_density(ellipse, u)
    z = 0.3
    assert abs(cauchy_interior(ellipse, g, z) - 0.27) < 1e-8
    assert abs(cauchy_interior_derivative(ellipse, u, z) - 0.27) < 1e-8


def test_derivative_density_rejects_polygon(square):
    with pytest.raises(UnsupportedCurveError):
        cauchy_derivative_density(square, np.ones(square.n))


def test_jump_examples(disc, star):
    u = 2 * np.cos(disc.t)
    (s,) = plemelj_jump(disc, u, 0, [1e-3])
    assert abs(s.jump - 2) < 1e-2
    (s,) = plemelj_jump(disc, np.ones(disc.n), 0, [1e-2])
    assert abs(s.jump - 1) < 1e-6
    ub = sample(star, lambda w: 1 / (w - 2.5))
    for j in (0, 100, 333):
        errs = [s.error for s in plemelj_jump(star, ub, j, [1e-1, 1e-2, 1e-3])]
        assert errs[0] > errs[1] > errs[2]


def test_jump_rejects_nonpositive(disc):
    with pytest.raises(ValueError):
        plemelj_jump(disc, np.ones(disc.n), 0, [0.0])


def test_boundary_function_tags(disc, ellipse):
    u = sample(disc, np.exp)
    v = sample_t(disc, np.cos)
    assert isinstance(u + v, BoundaryFunction)
    assert np.allclose((u - v).values, np.exp(disc.z) - np.cos(disc.t))
    with pytest.raises(CurveMismatchError):
        u + sample(ellipse, np.exp)
    with pytest.raises(CurveMismatchError):
        cauchy_boundary(ellipse, u)
    with pytest.raises(CurveMismatchError):
        values_on(disc, np.ones(3))
    with pytest.raises(ValueError):
        u.values[0] = 1


@settings(max_examples=20, deadline=None)
@given(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_linearity(alpha, beta):
    c = build_curve(CurveSpec.ellipse(n=128))
    rng = np.random.default_rng(3)
    u, v = band_limited(c, 10, rng), band_limited(c, 10, rng)
    lhs = cauchy_boundary(c, alpha * u + beta * v).values
    rhs = alpha * cauchy_boundary(c, u).values + beta * cauchy_boundary(c, v).values
    assert np.max(np.abs(lhs - rhs)) < 1e-10 * (1 + abs(alpha) + abs(beta)) * 10
