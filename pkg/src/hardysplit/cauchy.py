"""Cauchy integrals of boundary data.

Three evaluations of the same integral ``(1/2 pi i) \\oint u(w) / (w - z) dw``:

* :func:`cauchy_interior` for ``z`` inside the curve,
* :func:`cauchy_exterior` for ``z`` outside (with the sign convention that
  makes it reproduce functions holomorphic outside and vanishing at infinity),
* :func:`cauchy_boundary`, the boundary transform, by singularity subtraction

      C u(z_j) = u_j + (1/2 pi i) [ sum_{k != j} (u_k - u_j) z'_k w_k / (z_k - z_j)
                                   + (u o z)'(t_j) w_j ].

The bracket has a removable singularity, so the periodic trapezoid rule
(smooth curves) or the Gauss panels (polygons) integrate it at their native
rate.
"""

from dataclasses import dataclass

import numpy as np

from ._quadrature import panel_diff_matrix, spectral_derivative
from .exceptions import CurveMismatchError, PointLocationError, UnsupportedCurveError
from .geometry import classify_points

_CHUNK = 512


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """Complex samples of a function at the nodes of one curve."""

    curve_tag: str
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def _other(self, other):
        if isinstance(other, BoundaryFunction):
            if other.curve_tag != self.curve_tag:
                raise CurveMismatchError("boundary functions live on different curves")
            return other.values
        return other

    def __add__(self, other):
        return BoundaryFunction(self.curve_tag, self.values + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return BoundaryFunction(self.curve_tag, self.values - self._other(other))

    def __rsub__(self, other):
        return BoundaryFunction(self.curve_tag, self._other(other) - self.values)

    def __mul__(self, other):
        return BoundaryFunction(self.curve_tag, self.values * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return BoundaryFunction(self.curve_tag, self.values / self._other(other))

    def __neg__(self):
        return BoundaryFunction(self.curve_tag, -self.values)

    def conj(self):
        return BoundaryFunction(self.curve_tag, np.conj(self.values))

    def max_abs(self):
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0


def sample(curve, f, label=""):
    """Sample ``f(z)`` at the nodes of ``curve``."""
    return BoundaryFunction(curve.tag, np.broadcast_to(f(curve.z), curve.z.shape), label)


def sample_t(curve, f, label=""):
    """Sample ``f(t)`` at the parameter nodes of ``curve``."""
    return BoundaryFunction(curve.tag, np.broadcast_to(f(curve.t), curve.t.shape), label)


def values_on(curve, u):
    """Sample array of ``u`` after checking it belongs to ``curve``."""
    if isinstance(u, BoundaryFunction):
        if u.curve_tag != curve.tag:
            raise CurveMismatchError(
                f"data tagged {u.curve_tag} used on curve {curve.tag}")
        vals = u.values
    else:
        vals = np.asarray(u, dtype=complex)
    if vals.shape != (curve.n,):
        raise CurveMismatchError(f"expected {curve.n} samples, got shape {vals.shape}")
    return vals


def tangential_derivative(curve, u):
    """``d/dt u(z(t))`` at the nodes: spectral on smooth curves, per panel on polygons."""
    vals = values_on(curve, u)
    if curve.is_smooth:
        return spectral_derivative(vals)
    q = curve.order
    D = panel_diff_matrix(q)
    plen = np.diff(curve.panel_bounds, axis=1)
    return ((vals.reshape(-1, q) @ D.T) / plen).ravel()


def differentiation_matrix(curve):
    """Dense matrix of :func:`tangential_derivative`."""
    n = curve.n
    if curve.is_smooth:
        return spectral_derivative(np.eye(n)).T
    q = curve.order
    D = panel_diff_matrix(q)
    plen = np.diff(curve.panel_bounds, axis=1).ravel()
    out = np.zeros((n, n))
    for p, ell in enumerate(plen):
        sl = slice(p * q, (p + 1) * q)
        out[sl, sl] = D / ell
    return out


def cauchy_boundary(curve, u):
    """Boundary Cauchy transform at every node, by singularity subtraction."""
    vals = values_on(curve, u)
    d = tangential_derivative(curve, vals)
    zw = curve.dz * curve.w
    out = np.empty(curve.n, dtype=complex)
    for lo in range(0, curve.n, _CHUNK):
        rows = slice(lo, min(lo + _CHUNK, curve.n))
        zj = curve.z[rows, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            ker = zw[None, :] / (curve.z[None, :] - zj)
        idx = np.arange(rows.start, rows.stop)
        ker[idx - lo, idx] = 0.0
        diff = vals[None, :] - vals[rows, None]
        out[rows] = np.sum(diff * ker, axis=1)
    out = vals + (out + d * curve.w) / (2j * np.pi)
    return BoundaryFunction(curve.tag, out, "cauchy")


@dataclass(frozen=True, eq=False)
class NystromOperator:
    """Dense discretization of a boundary operator on one curve."""

    curve_tag: str
    matrix: np.ndarray
    role: str

    def __call__(self, u):
        if isinstance(u, BoundaryFunction) and u.curve_tag != self.curve_tag:
            raise CurveMismatchError("operator and data live on different curves")
        return BoundaryFunction(self.curve_tag, self.matrix @ np.asarray(u, dtype=complex),
                                self.role)

    @property
    def shape(self):
        return self.matrix.shape


def cauchy_matrix(curve):
    """Materialize the boundary Cauchy transform as a matrix."""
    n = curve.n
    zw = curve.dz * curve.w
    with np.errstate(divide="ignore", invalid="ignore"):
        K = zw[None, :] / (curve.z[None, :] - curve.z[:, None])
    np.fill_diagonal(K, 0.0)
    K -= np.diag(K.sum(axis=1))
    K += curve.w[:, None] * differentiation_matrix(curve)
    M = np.eye(n) + K / (2j * np.pi)
    return NystromOperator(curve.tag, M, "boundary-cauchy")


def _targets(z):
    arr = np.asarray(z, dtype=complex)
    return arr, np.atleast_1d(arr).ravel()


def _integral(curve, vals, z, power, near, anchor):
    """(1/2 pi i) sum (u_k - anchor) z'_k w_k / (z_k - z)^power, blocked over targets."""
    zw = curve.dz * curve.w
    out = np.empty(z.size, dtype=complex)
    for lo in range(0, z.size, _CHUNK):
        sl = slice(lo, lo + _CHUNK)
        dens = vals[None, :] - anchor[sl, None]
        out[sl] = np.sum(dens * zw[None, :] / (curve.z[None, :] - z[sl, None]) ** power,
                         axis=1)
    return out / (2j * np.pi)


def _nearest_values(curve, vals, z, near):
    anchor = np.zeros(z.size, dtype=complex)
    idx = np.flatnonzero(near)
    if idx.size:
        k = np.argmin(np.abs(z[idx, None] - curve.z[None, :]), axis=1)
        anchor[idx] = vals[k]
    return anchor


def _evaluate(curve, u, z, side, near_threshold, power=1, method="subtract"):
    vals = values_on(curve, u)
    shape_src, flat = _targets(z)
    grid = classify_points(curve, flat, near_threshold)
    ok = (grid.interior if side == "interior" else grid.exterior) & (grid.distance > 0)
    if not np.all(ok):
        raise PointLocationError(f"points not {side} to the curve: {flat[~ok][:3]}")
    if method == "barycentric":
        out = _barycentric(curve, vals, flat, side)
    elif method == "subtract":
        anchor = _nearest_values(curve, vals, flat, grid.near)
        out = _integral(curve, vals, flat, power, grid.near, anchor)
        if side == "interior" and power == 1:
            # the subtracted constant integrates to itself inside
            out += anchor
        if side == "exterior":
            out = -out
    else:
        raise ValueError(f"unknown evaluation method {method!r}")
    return out.reshape(shape_src.shape) if shape_src.ndim else complex(out[0])


def _barycentric(curve, vals, z, side):
    """Ratio form: quadrature errors of numerator and denominator cancel.

    Inside, ``f(z) = sum f_k K_k / sum K_k`` with ``K_k = z'_k w_k / (z_k - z)``.
    Outside, the reference function ``1/(w - a)`` (``a`` interior) takes the
    place of the constant.  Exact only for data in the matching Hardy class.
    """
    zw = curve.dz * curve.w
    out = np.empty(z.size, dtype=complex)
    if side == "interior":
        for lo in range(0, z.size, _CHUNK):
            sl = slice(lo, lo + _CHUNK)
            K = zw[None, :] / (curve.z[None, :] - z[sl, None])
            out[sl] = (K @ vals) / K.sum(axis=1)
        return out
    a = curve.interior_point
    scaled = vals * (curve.z - a)
    for lo in range(0, z.size, _CHUNK):
        sl = slice(lo, lo + _CHUNK)
        rho = zw[None, :] / ((curve.z[None, :] - z[sl, None]) * (curve.z - a)[None, :])
        out[sl] = (rho @ scaled) / rho.sum(axis=1) / (z[sl] - a)
    return out


def cauchy_interior(curve, u, z, near_threshold=None, method="subtract"):
    """Interior Cauchy integral of ``u`` at ``z`` (scalar or array).

    With ``method="subtract"`` targets within ``near_threshold`` of the curve
    use the constant-subtracted form anchored at the nearest node value.
    ``method="barycentric"`` is accurate up to the curve but only for ``u``
    already in the interior Hardy class (e.g. the output of
    :func:`cauchy_boundary`).
    """
    return _evaluate(curve, u, z, "interior", near_threshold, method=method)


def cauchy_exterior(curve, u, z, near_threshold=None, method="subtract"):
    """Exterior Cauchy integral ``-(1/2 pi i) \\oint u(w)/(w - z) dw``, ``z`` outside.

    ``method="barycentric"`` requires exterior Hardy data vanishing at infinity.
    """
    return _evaluate(curve, u, z, "exterior", near_threshold, method=method)


def cauchy_interior_derivative(curve, u, z, near_threshold=None):
    """``d/dz`` of the interior Cauchy integral, via the squared kernel."""
    return _evaluate(curve, u, z, "interior", near_threshold, power=2)


def cauchy_derivative_density(curve, u):
    """Density ``g = (d/dt u(z(t))) / z'(t)`` whose Cauchy integral is ``d/dz`` of u's.

    Integration by parts moves the derivative from the kernel onto the data;
    this needs a continuous tangent, so polygons are rejected.
    """
    if not curve.is_smooth:
        raise UnsupportedCurveError("derivative transfer needs a C^1 boundary")
    g = tangential_derivative(curve, u) / curve.dz
    return BoundaryFunction(curve.tag, g, "derivative-density")


@dataclass(frozen=True)
class JumpSample:
    delta: float
    jump: complex
    error: float


def plemelj_jump(curve, u, j, deltas):
    """Interior minus exterior Cauchy integral across node ``j`` along the normal.

    Returns one :class:`JumpSample` per offset distance; ``error`` is
    ``|jump - u_j|``.
    """
    vals = values_on(curve, u)
    nu = curve.normal[j]
    out = []
    for delta in deltas:
        if delta <= 0:
            raise ValueError("offsets must be positive")
        inside = cauchy_interior(curve, vals, curve.z[j] - delta * nu)
        outside = cauchy_exterior(curve, vals, curve.z[j] + delta * nu)
        jump = inside + outside
        out.append(JumpSample(float(delta), jump, float(abs(jump - vals[j]))))
    return out
