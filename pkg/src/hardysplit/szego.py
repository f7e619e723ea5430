"""Szegő projection through the Kerzman-Stein equation.

With ``C`` the boundary Cauchy transform and ``A = C - C*`` (adjoint in the
arclength inner product), the orthogonal projection onto the Hardy space is
``P = C (I + A)^{-1}``.  ``A`` has the continuous kernel

    A(z, w) = (1/2 pi i) [ T(w) / (w - z) - conj(T(z)) / conj(w - z) ],

so it is discretized by the trapezoid rule with a diagonal obtained by
extrapolating the kernel along the parametrization.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .cauchy import (
    BoundaryFunction,
    cauchy_boundary,
    cauchy_interior,
    cauchy_matrix,
    values_on,
)
from .exceptions import PointLocationError, UnsupportedCurveError
from .geometry import build_curve, classify_points


class CapTooShortError(ValueError):
    """The cap spans fewer than 16 node spacings."""


def _ks_kernel(zj, Tj, zk, Tk):
    d = zk - zj
    return (Tk / d - np.conj(Tj) / np.conj(d)) / (2j * np.pi)


def _ks_diagonal(curve, levels=4):
    """Limit of the kernel as ``w -> z``, by Richardson extrapolation in ``h^2``.

    The symmetric average of the kernel at ``t_j +- h`` is even in ``h``, so
    each halving of the step removes one more power of ``h^2``.
    """
    h = 2 * np.pi / curve.n
    zj, Tj = curve.z, curve.T

    def sym(step):
        vals = []
        for sgn in (1, -1):
            z, dz = curve.param(curve.t + sgn * step)
            vals.append(_ks_kernel(zj, Tj, z, dz / np.abs(dz)))
        return 0.5 * (vals[0] + vals[1])

    table = [sym(h / 2**i) for i in range(levels)]
    for m in range(1, levels):
        f = 4**m
        table = [(f * table[i + 1] - table[i]) / (f - 1) for i in range(len(table) - 1)]
    return table[0]


@dataclass(frozen=True, eq=False)
class KerzmanSteinOperator:
    """Dense matrix of ``A`` acting on node samples (arclength weights folded in)."""

    curve_tag: str
    matrix: np.ndarray
    s: np.ndarray

    def __call__(self, u):
        return self.matrix @ np.asarray(u, dtype=complex)

    def adjoint(self):
        """Adjoint matrix in the inner product ``<f, g> = sum f conj(g) s``."""
        M = self.matrix
        return (M.conj().T * self.s[None, :]) / self.s[:, None]

    @property
    def skew_defect(self):
        return float(np.max(np.abs(self.matrix + self.adjoint())))

    @property
    def spectral_radius(self):
        return float(np.max(np.abs(np.linalg.eigvals(self.matrix))))


def _require_smooth(curve):
    if not curve.is_smooth:
        raise UnsupportedCurveError("Kerzman-Stein kernel needs a C^{1,a} boundary")


def ks_apply(curve, x, diagonal=None, chunk=512):
    """Matrix-free ``A x``, blocked over rows."""
    _require_smooth(curve)
    x = np.asarray(x, dtype=complex)
    if diagonal is None:
        diagonal = _ks_diagonal(curve)
    xs = x * curve.s
    out = np.empty(curve.n, dtype=complex)
    for lo in range(0, curve.n, chunk):
        rows = np.arange(lo, min(lo + chunk, curve.n))
        with np.errstate(divide="ignore", invalid="ignore"):
            K = _ks_kernel(curve.z[rows, None], curve.T[rows, None],
                           curve.z[None, :], curve.T[None, :])
        K[rows - lo, rows] = diagonal[rows]
        out[rows] = K @ xs
    return out


def build_ks_operator(curve):
    """Assemble the Kerzman-Stein operator on a smooth curve."""
    _require_smooth(curve)
    zj, zk = curve.z[:, None], curve.z[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        K = _ks_kernel(zj, curve.T[:, None], zk, curve.T[None, :])
    np.fill_diagonal(K, _ks_diagonal(curve))
    return KerzmanSteinOperator(curve.tag, K * curve.s[None, :], curve.s)


class SzegoProjector:
    """Discrete ``P = C (I + A)^{-1}``.

    ``method="dense"`` factors ``I + A`` once (LU) and reuses it;
    ``method="iterative"`` applies ``A`` and ``C`` matrix-free inside GMRES,
    which keeps memory linear in ``N``.  ``I + A`` is normal with spectrum on
    the line ``Re = 1``, so GMRES converges quickly.  The default switches to
    the iterative solver above ``DENSE_LIMIT`` nodes.
    """

    DENSE_LIMIT = 2048

    def __init__(self, curve, method=None, rtol=1e-13):
        _require_smooth(curve)
        self.curve = curve
        if method is None:
            method = "dense" if curve.n <= self.DENSE_LIMIT else "iterative"
        if method not in ("dense", "iterative"):
            raise ValueError(f"unknown method {method!r}")
        self.method = method
        self.rtol = rtol
        if method == "dense":
            self.ks = build_ks_operator(curve)
            self.cauchy = cauchy_matrix(curve).matrix
            self._lu = scipy.linalg.lu_factor(np.eye(curve.n) + self.ks.matrix)
        else:
            self._diag = _ks_diagonal(curve)
            n = curve.n
            self._op = scipy.sparse.linalg.LinearOperator(
                (n, n), matvec=lambda x: x + ks_apply(curve, x, self._diag), dtype=complex)

    def _solve(self, vals):
        if self.method == "dense":
            return scipy.linalg.lu_solve(self._lu, vals)
        x, info = scipy.sparse.linalg.gmres(self._op, vals, rtol=self.rtol, atol=0.0,
                                            restart=100, maxiter=20)
        if info != 0:
            raise np.linalg.LinAlgError(f"GMRES did not converge (info={info})")
        return x

    def __call__(self, u):
        vals = values_on(self.curve, u)
        x = self._solve(vals)
        if self.method == "dense":
            out = self.cauchy @ x
        else:
            out = cauchy_boundary(self.curve, x).values
        return BoundaryFunction(self.curve.tag, out, "szego")

    def matrix(self):
        if self.method != "dense":
            raise ValueError("matrix form needs method='dense'")
        return self.cauchy @ scipy.linalg.lu_solve(self._lu, np.eye(self.curve.n))

    def inner(self, f, g):
        return complex(np.sum(np.asarray(f) * np.conj(np.asarray(g)) * self.curve.s))

    def norm(self, f):
        return float(np.sqrt(abs(self.inner(f, f))))

    def idempotence_defect(self, u):
        """``||P(Pu) - Pu|| / ||u||``."""
        Pu = self(u)
        return self.norm(self(Pu).values - Pu.values) / self.norm(values_on(self.curve, u))

    def self_adjointness_defect(self, u, v):
        """``|<Pu, v> - <u, Pv>| / (||u|| ||v||)``."""
        u = values_on(self.curve, u)
        v = values_on(self.curve, v)
        gap = abs(self.inner(self(u).values, v) - self.inner(u, self(v).values))
        return gap / (self.norm(u) * self.norm(v))


def szego_project(curve, u, projector=None):
    """Orthogonal projection of ``u`` onto the interior Hardy class."""
    P = SzegoProjector(curve) if projector is None else projector
    return P(u)


@dataclass(frozen=True, eq=False)
class SzegoKernels:
    curve_tag: str
    z: complex
    S: np.ndarray
    L: np.ndarray
    S_zz: complex


def szego_kernels(curve, z, projector=None):
    """Boundary samples of ``S(z, w_j)`` and ``L(w_j, z) = i S(z, w_j) / T_j``.

    ``S(., z)`` is the projection of the conjugated arclength Cauchy kernel
    ``conj(T(w) / (2 pi i (w - z)))``; ``S(z, w) = conj(S(w, z))``.  ``S_zz``
    is the interior value of ``S(., z)`` at ``z``.
    """
    grid = classify_points(curve, [z])
    if not grid.interior[0] or grid.distance[0] <= curve.near_threshold:
        raise PointLocationError(f"{z} must be interior and at least 5 spacings from the curve")
    P = SzegoProjector(curve) if projector is None else projector
    row = np.conj(curve.T / (2j * np.pi * (curve.z - z)))
    S_wz = P(row).values
    S = np.conj(S_wz)
    L = 1j * S / curve.T
    S_zz = cauchy_interior(curve, S_wz, z, method="barycentric")
    return SzegoKernels(curve.tag, complex(z), S, L, complex(S_zz))


@dataclass(frozen=True)
class StabilityReport:
    cap: tuple
    resolutions: tuple
    middle_max: tuple
    endpoint_max: tuple
    middle_ratio: float
    endpoint_growth: float

    @property
    def certified(self):
        return self.middle_ratio <= 1.5 and self.endpoint_growth >= 1.8

    def to_dict(self):
        return {
            "cap": list(self.cap),
            "resolutions": list(self.resolutions),
            "middle_max_derivative": list(self.middle_max),
            "endpoint_max_derivative": list(self.endpoint_max),
            "middle_ratio": self.middle_ratio,
            "endpoint_growth": self.endpoint_growth,
            "certified": self.certified,
        }


def cap_mask(t, t1, t2):
    """Weights of the cap indicator at parameters ``t``: 1 inside, 1/2 at an endpoint."""
    tol = 1e-12
    inside = (t > t1 + tol) & (t < t2 - tol)
    edge = (np.abs(t - t1) <= tol) | (np.abs(t - t2) <= tol)
    return inside + 0.5 * edge


def _cap_derivatives(curve, h_local, t1, t2, projector=None):
    """``|d'|`` on the open cap, with ``d = P(h chi) - h`` and centred differences in ``t``."""
    t = curve.t
    mask = cap_mask(t, t1, t2)
    h = h_local(curve) if callable(h_local) else np.asarray(h_local, dtype=complex)
    f = szego_project(curve, h * mask, projector).values
    idx = np.flatnonzero(mask == 1)
    d = f[idx] - h[idx]
    dt = t[1] - t[0]
    deriv = np.abs(np.gradient(d, dt))
    return t[idx], deriv


def pseudolocal_experiment(spec, cap, h_local, resolutions=None, endpoint_width=None):
    """Resolution stability of ``d = P(h chi_cap) - h`` on the cap.

    ``h_local(curve)`` returns node samples of the function restricted to
    the cap.  The middle third of the cap is compared at two resolutions;
    the endpoint band (``endpoint_width`` in ``t``, default two coarse
    spacings) is expected to sharpen as the grid refines.
    """
    t1, t2 = map(float, cap)
    if resolutions is None:
        resolutions = (spec.n, 2 * spec.n)
    n0 = resolutions[0]
    if (t2 - t1) < 16 * 2 * np.pi / n0:
        raise CapTooShortError("cap must span at least 16 node spacings")
    if endpoint_width is None:
        endpoint_width = 2 * (2 * np.pi / n0)
    third = (t2 - t1) / 3
    mids, ends = [], []
    for n in resolutions:
        curve = build_curve(spec.with_resolution(n))
        tc, deriv = _cap_derivatives(curve, h_local, t1, t2)
        mid = (tc >= t1 + third) & (tc <= t2 - third)
        end = (tc - t1 <= endpoint_width) | (t2 - tc <= endpoint_width)
        mids.append(float(deriv[mid].max()))
        ends.append(float(deriv[end].max()))
    return StabilityReport(
        (t1, t2),
        tuple(int(n) for n in resolutions),
        tuple(mids),
        tuple(ends),
        mids[-1] / mids[0],
        ends[-1] / ends[0],
    )
