import numpy as np
import pytest

from hardysplit.cauchy import cauchy_boundary
from hardysplit.exceptions import PointLocationError, UnsupportedCurveError
from hardysplit.geometry import CurveSpec, build_curve
from hardysplit.oracle import disc_cap_cauchy
from hardysplit.szego import (
    CapTooShortError,
    SzegoProjector,
    build_ks_operator,
    cap_mask,
    ks_apply,
    pseudolocal_experiment,
    szego_kernels,
    szego_project,
)

from conftest import band_limited

HALF = (np.pi / 2, 3 * np.pi / 2)


@pytest.fixture(scope="module")
def ellipse_P(ellipse):
    return SzegoProjector(ellipse)


@pytest.fixture(scope="module")
def star_P(star):
    return SzegoProjector(star)


def test_ks_vanishes_on_disc():
    c = build_curve(CurveSpec.disc(n=64))
    assert np.max(np.abs(build_ks_operator(c).matrix)) <= 1e-10


def test_ks_skew_adjoint(ellipse, star):
    A = build_ks_operator(ellipse)
    assert A.skew_defect <= 1e-10
    assert A.spectral_radius < 1
    B = build_ks_operator(star)
    assert B.skew_defect <= 1e-10


def test_ks_diagonal_resolution_stable(star):
    fine = build_curve(CurveSpec.star(n=1024))
    d512 = np.diag(build_ks_operator(star).matrix) / star.s
    d1024 = np.diag(build_ks_operator(fine).matrix) / fine.s
    assert np.all(np.isfinite(d512))
    assert np.max(np.abs(d512 - d1024[::2])) < 1e-8


def test_ks_matrix_free(ellipse):
    x = band_limited(ellipse, 10, np.random.default_rng(0))
    A = build_ks_operator(ellipse)
    assert np.max(np.abs(A(x) - ks_apply(ellipse, x))) < 1e-12


def test_ks_rejects_polygon(square):
    with pytest.raises(UnsupportedCurveError):
        build_ks_operator(square)
    with pytest.raises(UnsupportedCurveError):
        SzegoProjector(square)


@pytest.mark.parametrize("n", [-3, -1, 0, 1, 4])
def test_disc_fourier_truncation(disc, n):
    u = np.exp(1j * n * disc.t)
    expect = u if n >= 0 else 0 * u
    assert np.max(np.abs(szego_project(disc, u).values - expect)) < 1e-8


def test_polynomials_fixed(ellipse, star, ellipse_P, star_P):
    for c, P in ((ellipse, ellipse_P), (star, star_P)):
        for m in range(9):
            u = c.z**m
            assert np.max(np.abs(P(u).values - u)) < 1e-8


def test_orthogonal_complement_annihilated(ellipse, ellipse_P):
    G = 1 / (ellipse.z - 4)
    assert np.max(np.abs(ellipse_P(np.conj(G * ellipse.T)).values)) <= 1e-6
    # resolution check against a finer reference
    fine = build_curve(CurveSpec.ellipse(n=512))
    Gf = 1 / (fine.z - 4)
    assert np.max(np.abs(szego_project(fine, np.conj(Gf * fine.T)).values)) <= 1e-6


@pytest.mark.parametrize("which", ["ellipse", "star"])
def test_idempotent_and_self_adjoint(request, which):
    c = request.getfixturevalue(which)
    P = request.getfixturevalue(which + "_P")
    rng = np.random.default_rng(1)
    for _ in range(3):
        u, v = band_limited(c, c.n // 8, rng), band_limited(c, c.n // 8, rng)
        assert P.idempotence_defect(u) <= 1e-8
        assert P.self_adjointness_defect(u, v) <= 1e-8
        # the range sits in the discrete Hardy class
        Pu = P(u)
        assert (cauchy_boundary(c, Pu) - Pu).max_abs() <= 1e-6


def test_disc_szego_equals_cauchy(disc):
    u = band_limited(disc, 32, np.random.default_rng(2))
    assert np.max(np.abs(szego_project(disc, u).values - cauchy_boundary(disc, u).values)) < 1e-8


def test_iterative_matches_dense(ellipse, ellipse_P):
    u = band_limited(ellipse, 20, np.random.default_rng(3))
    it = SzegoProjector(ellipse, method="iterative")
    assert np.max(np.abs(it(u).values - ellipse_P(u).values)) < 1e-12
    with pytest.raises(ValueError):
        it.matrix()


def test_projector_matrix_is_projection(ellipse_P):
    M = ellipse_P.matrix()
    u = band_limited(ellipse_P.curve, 16, np.random.default_rng(4))
    assert np.max(np.abs(M @ (M @ u) - M @ u)) < 1e-10


def test_kernels_disc_closed_forms(disc):
    k = szego_kernels(disc, 0)
    assert np.max(np.abs(k.S - 1 / (2 * np.pi))) < 1e-8
    k = szego_kernels(disc, 0.5)
    t = disc.t
    assert np.max(np.abs(k.S - 1 / (2 * np.pi * (1 - 0.5 * np.exp(-1j * t))))) < 1e-8
    assert np.max(np.abs(k.L - 1 / (2 * np.pi * (np.exp(1j * t) - 0.5)))) < 1e-8
    # t = 0 and t = pi by hand: S = 1/pi and 1/(3 pi)
    assert abs(k.S[0] - 1 / np.pi) < 1e-8
    assert abs(k.S[disc.n // 2] - 1 / (3 * np.pi)) < 1e-8


def test_kernels_reproducing(ellipse, ellipse_P):
    k = szego_kernels(ellipse, 0.2, ellipse_P)
    norm2 = np.sum(np.abs(k.S) ** 2 * ellipse.s)
    assert abs(norm2 - k.S_zz) < 1e-6
    assert abs(k.S_zz.imag) < 1e-10


def test_kernels_reject_points(disc):
    with pytest.raises(PointLocationError):
        szego_kernels(disc, 2.0)
    with pytest.raises(PointLocationError):
        szego_kernels(disc, 0.99)


def test_cap_mask():
    t = np.array([0.0, 1.0, 1.5, 2.0, 3.0])
    np.testing.assert_array_equal(cap_mask(t, 1.0, 2.0), [0, 0.5, 1, 0.5, 0])


def test_pseudolocal_indicator():
    r = pseudolocal_experiment(CurveSpec.disc(n=256), HALF, lambda c: np.ones(c.n))
    assert r.resolutions == (256, 512)
    assert r.middle_ratio <= 1.5
    assert r.endpoint_growth >= 1.8
    assert r.certified


def test_pseudolocal_square_monomial():
    r = pseudolocal_experiment(CurveSpec.disc(n=256), HALF, lambda c: c.z**2)
    assert r.certified


def test_pseudolocal_tail_matches_closed_form():
    # the jump in the data makes the discrete error O(N^-2) in the middle third
    c = build_curve(CurveSpec.disc(n=4096))
    P = SzegoProjector(c)
    mid = (c.t >= HALF[0] + np.pi / 3) & (c.t <= HALF[1] - np.pi / 3)
    for coeffs in ([1.0], [0, 0, 1.0]):
        h = sum(a * c.z**m for m, a in enumerate(coeffs))
        d = P(h * cap_mask(c.t, *HALF)).values - h
        exact = disc_cap_cauchy(coeffs, *HALF, c.t[mid]) - h[mid]
        assert np.max(np.abs(d[mid] - exact)) < 1e-6


def test_pseudolocal_ellipse():
    r = pseudolocal_experiment(CurveSpec.ellipse(n=256), HALF, lambda c: 1 / (c.z - 4))
    assert r.middle_ratio <= 1.5


def test_pseudolocal_cap_too_short():
    with pytest.raises(CapTooShortError):
        pseudolocal_experiment(CurveSpec.disc(n=64), (0, 0.5), lambda c: np.ones(c.n))


def test_residue_split_on_disc():
    """Global projection equals the split form built from the closed-form L.

    On the disc L(w, z) = 1/(2 pi (w - z)).  Closing the cap with the chord
    from -i back to i encloses the left half-disc; for z there the residue
    1/(2 pi) of L at w = z contributes h(z), so
    f(z) = h(z) - (1/2 pi i) int_chord h(w) / (w - z) dw.
    """
    from hardysplit._quadrature import gauss_legendre
    from hardysplit.cauchy import cauchy_interior

    # the jump at the cap ends limits the trapezoid rule to O(N^-2)
    disc = build_curve(CurveSpec.disc(n=1024))
    h = lambda w: w**2
    f = szego_project(disc, h(disc.z) * cap_mask(disc.t, *HALF))
    x, wts = gauss_legendre(40)
    chord = -1j + 2j * x  # from b = -i to a = i
    for z in (-0.5, -0.3 + 0.2j, -0.6 - 0.4j):
        global_value = cauchy_interior(disc, f, z, method="barycentric")
        line = np.sum(wts * h(chord) / (chord - z)) * 2j
        split = h(z) - line / (2j * np.pi)
        assert abs(global_value - split) < 1e-6
