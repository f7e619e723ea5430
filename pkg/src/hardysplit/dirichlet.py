"""Harmonic extension on the disc through the ``u = h + H`` decomposition.

On a disc of radius ``r`` about ``c`` the Dirichlet solution is
``U(z) = h(z) + H(c + r^2 / conj(z - c))``: the reflected exterior part is
antiholomorphic inside and vanishes at the centre.  For real data this
collapses to ``2 Re C u - mean(u)``.  The Poisson integral is kept as an
independent trapezoid-rule oracle.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .cauchy import cauchy_exterior, cauchy_interior, values_on
from .decomp import decompose
from .exceptions import (
    AccuracyWarning,
    DataNotRealError,
    PointLocationError,
    UnsupportedCurveError,
)
from .geometry import EvaluationGrid, classify_points

REAL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HarmonicField:
    grid: EvaluationGrid
    values: np.ndarray
    method: str

    def __len__(self):
        return self.values.size


def _require_disc(curve):
    if curve.kind != "disc" or curve.offset:
        raise UnsupportedCurveError("the reflection z -> 1/conj(z) only fills a disc")
    return curve.spec.center, curve.spec.radius


def _interior_grid(curve, points):
    if isinstance(points, EvaluationGrid):
        grid = points
    else:
        grid = classify_points(curve, points)
    if not np.all(grid.interior):
        raise PointLocationError("Dirichlet targets must be interior")
    return grid


def _require_real(vals):
    if np.max(np.abs(vals.imag), initial=0.0) > REAL_TOL:
        raise DataNotRealError("boundary data has a non-zero imaginary part")
    return vals.real


def mean_value(curve, u):
    """Arclength average of ``u``."""
    vals = values_on(curve, u)
    return complex(np.sum(vals * curve.s) / curve.length)


def reflected_exterior(curve, H, points):
    """``H`` evaluated at the reflection of ``points`` across the circle.

    The centre reflects to infinity, where ``H`` vanishes.
    """
    c, r = _require_disc(curve)
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    out = np.zeros(pts.size, dtype=complex)
    off = pts != c
    refl = c + r**2 / np.conj(pts[off] - c)
    if refl.size:
        out[off] = cauchy_exterior(curve, H, refl, method="barycentric")
    return out


def dirichlet_disc(curve, u, points):
    """Harmonic extension of (complex) ``u`` as ``h(z) + H(reflected z)``."""
    _require_disc(curve)
    grid = _interior_grid(curve, points)
    dec = decompose(curve, u)
    inner = cauchy_interior(curve, dec.h, grid.points, method="barycentric")
    outer = reflected_exterior(curve, dec.H, grid.points)
    return HarmonicField(grid, inner + outer, "h-plus-reflected-H")


def dirichlet_disc_real(curve, u, points):
    """Harmonic extension of real ``u`` as ``2 Re C u - mean(u)``."""
    _require_disc(curve)
    vals = _require_real(values_on(curve, u))
    grid = _interior_grid(curve, points)
    u0 = mean_value(curve, vals).real
    values = 2 * np.real(cauchy_interior(curve, vals, grid.points)) - u0
    return HarmonicField(grid, values, "two-re-cauchy")


def poisson_kernel(z, t):
    """Poisson kernel of the unit disc as ``(1/pi) Re[e^{it}/(e^{it} - z) - 1/2]``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise PointLocationError("Poisson kernel needs |z| < 1")
    e = np.exp(1j * np.asarray(t, dtype=float))
    return np.real(e / (e - z) - 0.5) / np.pi


def poisson_extension(curve, u, z, near_threshold=None):
    """Trapezoid-rule Poisson integral of ``u`` on a disc curve.

    Warns with :class:`AccuracyWarning` when a target is within
    ``near_threshold`` of the circle, where the rule loses accuracy.
    """
    c, r = _require_disc(curve)
    vals = values_on(curve, u)
    z = np.asarray(z, dtype=complex)
    flat = (np.atleast_1d(z).ravel() - c) / r
    if np.any(np.abs(flat) >= 1):
        raise PointLocationError("Poisson targets must lie inside the disc")
    if near_threshold is None:
        near_threshold = curve.near_threshold
    if np.any(1 - np.abs(flat) < near_threshold / r):
        warnings.warn("Poisson quadrature near the boundary is inaccurate",
                      AccuracyWarning, stacklevel=2)
    P = poisson_kernel(flat[:, None], curve.t[None, :])
    out = P @ (vals * curve.w)
    return out.reshape(z.shape) if z.ndim else complex(out[0])


def poisson_field(curve, u, points):
    grid = _interior_grid(curve, points)
    return HarmonicField(grid, poisson_extension(curve, u, grid.points, near_threshold=0.0),
                         "poisson-quadrature")


def double_layer(curve, u, z):
    """Double-layer potential ``oint u dN/dn_w ds`` with ``N = log|z - w| / 2 pi``."""
    vals = values_on(curve, u)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    d = curve.z[None, :] - z[:, None]
    kern = np.real(d * np.conj(curve.normal)[None, :]) / (2 * np.pi * np.abs(d) ** 2)
    return kern @ (vals * curve.s)


@dataclass(frozen=True)
class DoubleLayerComparison:
    value: float
    double_layer: float

    @property
    def discrepancy(self):
        return abs(self.value - self.double_layer)


def harmonic_extension_general(curve, u, z):
    """``Re`` of the interior Cauchy integral of real ``u``, cross-checked as a double layer.

    This is the interior harmonic function ``u_1`` of the boundary split
    ``u = u_1 + u_2``; it equals the Dirichlet solution only in special
    cases (constants, or data already of the form ``Re`` of boundary values
    of a holomorphic function on a disc).
    """
    if not curve.is_smooth:
        raise UnsupportedCurveError("needs a smooth curve")
    vals = _require_real(values_on(curve, u))
    value = float(np.real(cauchy_interior(curve, vals, z)))
    dl = float(np.real(double_layer(curve, vals, z)[0]))
    return DoubleLayerComparison(value, dl)
