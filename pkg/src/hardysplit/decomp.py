"""The ``u = h + H`` decomposition and the antiderivative of Hardy data.

``h`` is the boundary Cauchy transform of ``u`` (interior Hardy part) and
``H = u - h`` (exterior Hardy part, vanishing at infinity), so the residual
``u - h - H`` is zero by construction.  The diagnostics measure how well the
discrete pieces live in their Hardy classes.
"""

from dataclasses import dataclass, field

import numpy as np

from ._quadrature import panel_cumint_matrix, spectral_antiderivative
from .cauchy import (
    BoundaryFunction,
    cauchy_boundary,
    cauchy_exterior,
    cauchy_interior,
    values_on,
)
from .exceptions import (
    DegenerateFitError,
    NotHardyError,
    PathLeavesDomainError,
    PointLocationError,
    UnsupportedCurveError,
)
from .geometry import classify_points, offset_curve, winding_numbers

SMOOTH_TOL = 1e-8
POLYGON_TOL = 1e-4


def tolerance_for(curve):
    """Hardy-class tolerance for the curve kind."""
    return SMOOTH_TOL if curve.is_smooth else POLYGON_TOL


@dataclass(frozen=True, eq=False)
class HardyDecomposition:
    curve_tag: str
    u: BoundaryFunction
    h: BoundaryFunction
    H: BoundaryFunction
    residual: float
    projection_defect: float
    exterior_defect: float
    tolerance: float

    @property
    def ok(self):
        return max(self.projection_defect, self.exterior_defect) <= self.tolerance


def decompose(curve, u, p=2.0):
    """Split ``u`` into interior and exterior Hardy parts.

    ``p`` is the Lebesgue exponent the data is assumed to lie in; the
    decomposition needs ``1 < p < inf``.
    """
    if not 1 < p < np.inf:
        raise ValueError(f"the decomposition needs 1 < p < inf, got p = {p}")
    vals = values_on(curve, u)
    u = BoundaryFunction(curve.tag, vals, getattr(u, "label", ""))
    h = cauchy_boundary(curve, u)
    H = u - h
    Ch = cauchy_boundary(curve, h)
    CH = cauchy_boundary(curve, H)
    return HardyDecomposition(
        curve.tag,
        u,
        BoundaryFunction(curve.tag, h.values, "h"),
        BoundaryFunction(curve.tag, H.values, "H"),
        residual=float(np.max(np.abs(u.values - h.values - H.values))),
        projection_defect=float(np.max(np.abs(Ch.values - h.values))),
        exterior_defect=float(np.max(np.abs(CH.values))),
        tolerance=tolerance_for(curve),
    )


def verify_exterior_vanishing(curve, H, radii, angles=(0.0, np.pi / 2, np.pi, 3 * np.pi / 2)):
    """Sample ``R |C_e H(R e^{i theta})|`` on large circles.

    For an exterior Hardy function this tends to ``|c1|``, with
    ``c1 = (1/2 pi i) \\oint H dw`` the coefficient of ``1/z`` at infinity.
    Returns ``(c1, [(R, samples), ...])``.
    """
    vals = values_on(curve, H)
    rmin = np.max(np.abs(curve.z)) + 1
    c1 = complex(np.sum(vals * curve.dz * curve.w) / (2j * np.pi))
    rows = []
    for R in radii:
        if R <= rmin:
            raise ValueError(f"radius {R} must exceed max|z| + 1 = {rmin:.4g}")
        pts = R * np.exp(1j * np.asarray(angles))
        rows.append((float(R), R * np.abs(cauchy_exterior(curve, vals, pts))))
    return c1, rows


@dataclass(frozen=True, eq=False)
class AntiderivativeResult:
    curve_tag: str
    H: BoundaryFunction
    endpoint_residual: float
    projection_defect: float
    total_variation: float
    variation_bound: float
    interior_checks: list = field(default_factory=list)

    @property
    def absolutely_continuous(self):
        return self.total_variation <= self.variation_bound * (1 + 1e-8)


def _projection_defect(curve, h):
    return float(np.max(np.abs(cauchy_boundary(curve, h).values - h)))


def _require_hardy(curve, vals):
    defect = _projection_defect(curve, vals)
    if defect > 10 * tolerance_for(curve) * max(1.0, np.max(np.abs(vals))):
        raise NotHardyError(f"projection defect {defect:.3g} exceeds 10x tolerance")
    return defect


def cumulative_integral(curve, f):
    """``int_{t_0}^{t_j} f(t) dt`` at every node, spectral or per panel."""
    if curve.is_smooth:
        return spectral_antiderivative(f)
    q = curve.order
    S = panel_cumint_matrix(q)
    fp = np.asarray(f, dtype=complex).reshape(-1, q)
    plen = np.diff(curve.panel_bounds, axis=1)
    partial = (fp @ S.T) * plen
    full = (fp * curve.w.reshape(-1, q)).sum(axis=1)
    start = np.concatenate([[0.0], np.cumsum(full)[:-1]])
    out = (start[:, None] + partial).ravel()
    return out - out[0]


def antiderivative_boundary(curve, h):
    """Boundary values of the antiderivative ``H(z(tau)) = int h(z(t)) z'(t) dt``.

    The base point is the first node, so ``H_0 = 0``.  Raises
    :class:`NotHardyError` if ``h`` is not interior-Hardy to within ten times
    the curve tolerance.
    """
    vals = values_on(curve, h)
    defect = _require_hardy(curve, vals)
    f = vals * curve.dz
    H = cumulative_integral(curve, f)
    H[0] = 0.0
    closing = np.sum(f * curve.w)
    endpoint = abs(closing)
    tv = float(np.sum(np.abs(np.diff(H))) + abs(closing - H[-1]))
    bound = float(np.sum(np.abs(vals) * curve.s))
    return AntiderivativeResult(
        curve.tag,
        BoundaryFunction(curve.tag, H, "antiderivative"),
        float(endpoint),
        defect,
        tv,
        bound,
    )


def _path_integral(curve, vals, a, b, q=24):
    from ._quadrature import gauss_legendre

    x, w = gauss_legendre(q)
    pts = a + (b - a) * x
    return np.sum(w * cauchy_interior(curve, vals, pts, method="barycentric")) * (b - a)


def antiderivative_interior(curve, h, z, step=1e-4, leg=None, pieces=8):
    """Antiderivative of ``h`` at interior ``z`` and a finite-difference check.

    The path leaves the base node along the inward normal for ``leg`` (five
    node spacings by default) and then runs straight to ``z``.  Returns
    ``(value, relative_error)`` where the error compares the central
    difference of the antiderivative against the Cauchy integral of ``h``.
    """
    vals = values_on(curve, h)
    leg = curve.near_threshold if leg is None else leg
    start = curve.z[0]
    knee = start - leg * curve.normal[0]
    grid = classify_points(curve, [z])
    if not grid.interior[0]:
        raise PointLocationError(f"{z} is not interior")
    # sample the straight legs densely and test them against the outline
    probe = np.concatenate([
        start + (knee - start) * np.linspace(0, 1, 64)[1:],
        knee + (z - knee) * np.linspace(0, 1, 256),
    ])
    if np.any(winding_numbers(curve.outline, probe) != 1):
        raise PathLeavesDomainError("integration path leaves the domain")

    value = 0j
    for seg_a, seg_b in ((start, knee), (knee, z)):
        edges = seg_a + (seg_b - seg_a) * np.linspace(0, 1, pieces + 1)
        for a, b in zip(edges[:-1], edges[1:]):
            value += _path_integral(curve, vals, a, b)
    fd = _path_integral(curve, vals, z - step, z + step) / (2 * step)
    exact = cauchy_interior(curve, vals, z)
    rel = abs(fd - exact) / max(abs(exact), np.finfo(float).tiny)
    return complex(value), float(rel)


@dataclass(frozen=True)
class ModulusReport:
    norm: float
    exponent: float
    segment_integrals: np.ndarray
    segment_lengths: np.ndarray
    bounds: np.ndarray
    ratios: np.ndarray

    @property
    def holds(self):
        return bool(np.all(np.abs(self.segment_integrals) <= self.bounds + 1e-8))


def modulus_of_continuity_check(curve, h, p, m):
    """Check ``|int_sigma h dz| <= ||h||_p l(sigma)^(1/q)`` on ``m`` boundary segments."""
    if m < 2:
        raise ValueError("need at least 2 segments")
    if not 1 < p < np.inf:
        raise ValueError("p must lie in (1, inf)")
    vals = values_on(curve, h)
    q = p / (p - 1)
    norm = float(np.sum(np.abs(vals) ** p * curve.s) ** (1 / p))
    groups = np.array_split(np.arange(curve.n), m)
    f = vals * curve.dz * curve.w
    ints = np.array([f[g].sum() for g in groups])
    lengths = np.array([curve.s[g].sum() for g in groups])
    bounds = norm * lengths ** (1 / q)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratios = np.where(bounds > 0, np.abs(ints) / bounds, 0.0)
    return ModulusReport(norm, q, ints, lengths, bounds, ratios)


def hardy_norm_offset(curve, u, p, epsilons):
    """``L^p`` norms of the Cauchy extension of ``C u`` on inward parallel curves.

    Returns ``(boundary_norm, [(eps, norm), ...])`` where ``boundary_norm`` is
    the norm of ``h = C u`` on the curve itself.
    """
    if not curve.is_smooth:
        raise UnsupportedCurveError("parallel curves need a smooth boundary")
    h = cauchy_boundary(curve, u).values
    base = float(np.sum(np.abs(h) ** p * curve.s) ** (1 / p))
    out = []
    for eps in epsilons:
        inner = offset_curve(curve, eps)
        f = cauchy_interior(curve, h, inner.z, method="barycentric")
        out.append((float(eps), float(np.sum(np.abs(f) ** p * inner.s) ** (1 / p))))
    return base, out


@dataclass(frozen=True)
class HolderEstimate:
    alpha: float
    residual: float
    scales: np.ndarray
    oscillations: np.ndarray
    degenerate: bool = False


def holder_exponent_estimate(curve, f, scales):
    """Fit ``log osc(delta) ~ alpha log delta`` with ``osc`` the max increment at arclength ``delta``.

    A constant function is reported with ``alpha = 1`` and ``degenerate``.
    """
    scales = np.sort(np.asarray(scales, dtype=float))
    if scales.size < 3 or scales[-1] < 10 * scales[0] * (1 - 1e-12):
        raise DegenerateFitError("need at least 3 scales spanning a decade")
    vals = values_on(curve, f)
    s = curve.arclength_coordinate
    L = curve.length
    # periodic extension for interpolation at s + delta
    s_ext = np.concatenate([s - L, s, s + L])
    v_ext = np.concatenate([vals, vals, vals])
    osc = np.empty(scales.size)
    for i, delta in enumerate(scales):
        shifted = np.interp(s + delta, s_ext, v_ext.real) + 1j * np.interp(s + delta, s_ext,
                                                                           v_ext.imag)
        osc[i] = np.max(np.abs(shifted - vals))
    if np.all(osc <= 1e-14 * max(1.0, np.max(np.abs(vals)))):
        return HolderEstimate(1.0, 0.0, scales, osc, degenerate=True)
    A = np.column_stack([np.log(scales), np.ones_like(scales)])
    coef, res, *_ = np.linalg.lstsq(A, np.log(osc), rcond=None)
    resid = float(np.sqrt(res[0] / scales.size)) if res.size else 0.0
    return HolderEstimate(float(coef[0]), resid, scales, osc)
