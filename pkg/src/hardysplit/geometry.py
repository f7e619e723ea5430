"""Oriented Jordan curves with quadrature rules.

Smooth curves (disc, ellipse, star) are sampled at equispaced parameters so
the periodic trapezoid rule is spectrally accurate.  Polygons carry
composite Gauss-Legendre panels, dyadically graded toward every corner;
no node ever sits on a corner.

All curves are parametrized over ``[0, 2*pi)`` counterclockwise.
"""

import hashlib
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import shapely

from ._quadrature import gauss_legendre
from .exceptions import InvalidCurveError, OffsetTooLargeError, UnsupportedCurveError

TWO_PI = 2 * np.pi
SMOOTH_KINDS = ("disc", "ellipse", "star")
KINDS = SMOOTH_KINDS + ("polygon",)

MIN_NODES = 4

#: default Gauss-Legendre order of each polygon panel
PANEL_ORDER = 16


@dataclass(frozen=True)
class CurveSpec:
    """Parameters of a curve before discretization."""

    kind: str
    n: int = 256
    center: complex = 0j
    radius: float = 1.0
    a: float = 2.0
    b: float = 1.0
    r0: float = 1.0
    amp: float = 0.3
    k: int = 5
    vertices: tuple = ()
    panels_per_side: int = 8
    grading_depth: int = 6
    order: int = PANEL_ORDER

    @classmethod
    def disc(cls, radius=1.0, n=256, center=0j):
        return cls("disc", n=n, radius=radius, center=complex(center))

    @classmethod
    def ellipse(cls, a=2.0, b=1.0, n=256, center=0j):
        return cls("ellipse", n=n, a=a, b=b, center=complex(center))

    @classmethod
    def star(cls, r0=1.0, amp=0.3, k=5, n=512, center=0j):
        return cls("star", n=n, r0=r0, amp=amp, k=k, center=complex(center))

    @classmethod
    def polygon(cls, vertices, panels_per_side=8, grading_depth=6, order=PANEL_ORDER):
        verts = tuple(complex(*v) if np.ndim(v) else complex(v) for v in vertices)
        return cls(
            "polygon",
            vertices=verts,
            panels_per_side=panels_per_side,
            grading_depth=grading_depth,
            order=order,
        )

    @classmethod
    def from_dict(cls, d):
        """Build from the JSON layout, e.g. ``{"kind": "disc", "radius": 1.0, "n": 256}``."""
        d = dict(d)
        kind = d.pop("kind", None)
        if kind not in KINDS:
            raise InvalidCurveError(f"unknown curve kind {kind!r}")
        if "center" in d:
            c = d.pop("center")
            d["center"] = complex(c[0], c[1]) if np.ndim(c) else complex(c)
        if kind == "polygon":
            verts = d.pop("vertices", None)
            if not verts:
                raise InvalidCurveError("polygon needs a vertex list")
            return cls.polygon(verts, **d)
        known = {"n", "center", "radius", "a", "b", "r0", "amp", "k"}
        extra = set(d) - known
        if extra:
            raise InvalidCurveError(f"unexpected keys for {kind}: {sorted(extra)}")
        return cls(kind, **d)

    def to_dict(self):
        c = [self.center.real, self.center.imag]
        if self.kind == "disc":
            return {"kind": "disc", "center": c, "radius": self.radius, "n": self.n}
        if self.kind == "ellipse":
            return {"kind": "ellipse", "center": c, "a": self.a, "b": self.b, "n": self.n}
        if self.kind == "star":
            return {"kind": "star", "center": c, "r0": self.r0, "amp": self.amp,
                    "k": self.k, "n": self.n}
        return {
            "kind": "polygon",
            "vertices": [[v.real, v.imag] for v in self.vertices],
            "panels_per_side": self.panels_per_side,
            "grading_depth": self.grading_depth,
            "order": self.order,
        }

    def with_resolution(self, n):
        """Same curve at a different resolution (panels per side for polygons)."""
        from dataclasses import replace

        if self.kind == "polygon":
            return replace(self, panels_per_side=int(n))
        return replace(self, n=int(n))

    def validate(self):
        if self.kind not in KINDS:
            raise InvalidCurveError(f"unknown curve kind {self.kind!r}")
        if self.kind == "polygon":
            _validate_polygon(np.asarray(self.vertices, dtype=complex))
            if self.panels_per_side < 2:
                raise InvalidCurveError("need at least 2 panels per side")
            if self.grading_depth < 0 or self.order < 2:
                raise InvalidCurveError("grading depth must be >= 0 and order >= 2")
            return
        if self.n < MIN_NODES:
            raise InvalidCurveError(f"N = {self.n} < {MIN_NODES} nodes")
        if self.kind == "disc" and not self.radius > 0:
            raise InvalidCurveError("disc radius must be positive")
        if self.kind == "ellipse" and not (self.a >= self.b > 0):
            raise InvalidCurveError("ellipse needs a >= b > 0")
        if self.kind == "star":
            if not self.r0 > 0:
                raise InvalidCurveError("star base radius must be positive")
            if not 0 <= self.amp < self.r0:
                raise InvalidCurveError("star needs 0 <= amp < r0")
            if int(self.k) != self.k or self.k < 1:
                raise InvalidCurveError("star wavenumber must be a positive integer")


def _signed_area(poly):
    x, y = poly.real, poly.imag
    return 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)


def _is_simple(poly):
    ring = shapely.LinearRing(np.column_stack([poly.real, poly.imag]))
    return bool(ring.is_simple)


def _validate_polygon(v):
    if v.size < 3:
        raise InvalidCurveError("polygon needs at least 3 vertices")
    if np.any(np.abs(v - np.roll(v, -1)) == 0):
        raise InvalidCurveError("polygon has repeated consecutive vertices")
    if not _is_simple(v):
        raise InvalidCurveError("polygon vertex list self-intersects")
    if _signed_area(v) <= 0:
        raise InvalidCurveError("polygon vertices must be in counterclockwise order")


class SmoothParametrization:
    """Analytic z(t), z'(t), z''(t) of a smooth curve, optionally offset.

    The offset curve moves every point a distance ``offset`` along the
    inward normal ``i T``; its derivative is ``z'(t) (1 - offset * kappa)``.
    Offsets of offsets accumulate because parallel curves share normals.
    """

    def __init__(self, spec, offset=0.0):
        self.spec = spec
        self.offset = float(offset)

    def _base(self, t):
        s = self.spec
        t = np.asarray(t, dtype=float)
        e = np.exp(1j * t)
        if s.kind == "disc":
            z = s.center + s.radius * e
            dz = 1j * s.radius * e
            d2z = -s.radius * e
        elif s.kind == "ellipse":
            z = s.center + s.a * np.cos(t) + 1j * s.b * np.sin(t)
            dz = -s.a * np.sin(t) + 1j * s.b * np.cos(t)
            d2z = -s.a * np.cos(t) - 1j * s.b * np.sin(t)
        elif s.kind == "star":
            k = s.k
            r = s.r0 + s.amp * np.cos(k * t)
            dr = -s.amp * k * np.sin(k * t)
            d2r = -s.amp * k * k * np.cos(k * t)
            z = s.center + r * e
            dz = (dr + 1j * r) * e
            d2z = (d2r + 2j * dr - r) * e
        else:
            raise UnsupportedCurveError(f"no smooth parametrization for {s.kind}")
        return z, dz, d2z

    def __call__(self, t):
        """Return ``(z, dz)`` at parameters ``t``."""
        z, dz, d2z = self._base(t)
        if self.offset == 0.0:
            return z, dz
        speed = np.abs(dz)
        T = dz / speed
        kappa = np.imag(np.conj(dz) * d2z) / speed**3
        return z + 1j * self.offset * T, dz * (1 - self.offset * kappa)

    def curvature(self, t):
        z, dz, d2z = self._base(t)
        kappa = np.imag(np.conj(dz) * d2z) / np.abs(dz) ** 3
        return kappa / (1 - self.offset * kappa)


@dataclass(frozen=True, eq=False)
class JordanCurve:
    """Discretized counterclockwise boundary curve.

    ``w`` are quadrature weights with respect to the parameter ``t``; the
    arclength weights are ``s = |dz| * w``.
    """

    kind: str
    t: np.ndarray
    z: np.ndarray
    dz: np.ndarray
    w: np.ndarray
    spec: CurveSpec
    param: SmoothParametrization = None
    offset: float = 0.0
    corner_t: np.ndarray = field(default_factory=lambda: np.empty(0))
    vertices: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=complex))
    panel_bounds: np.ndarray = None
    order: int = 0

    def __post_init__(self):
        for name in ("t", "z", "dz", "w", "corner_t", "vertices"):
            arr = getattr(self, name)
            if isinstance(arr, np.ndarray):
                arr.setflags(write=False)

    @property
    def n(self):
        return self.t.size

    @property
    def is_smooth(self):
        return self.kind in SMOOTH_KINDS

    @cached_property
    def speed(self):
        return np.abs(self.dz)

    @cached_property
    def T(self):
        """Unit tangents."""
        return self.dz / self.speed

    @cached_property
    def normal(self):
        """Outward unit normals, ``-i T``."""
        return -1j * self.T

    @cached_property
    def s(self):
        """Arclength quadrature weights."""
        return self.speed * self.w

    @cached_property
    def length(self):
        return float(self.s.sum())

    @cached_property
    def area(self):
        return float(np.real(np.sum(np.conj(self.z) * self.dz * self.w) / 2j))

    @property
    def spacing(self):
        """Mean arclength between nodes."""
        return self.length / self.n

    @property
    def near_threshold(self):
        return 5 * self.spacing

    @cached_property
    def tag(self):
        h = hashlib.sha1(self.kind.encode())
        for arr in (self.t, self.z, self.dz, self.w):
            h.update(np.ascontiguousarray(arr).tobytes())
        return h.hexdigest()[:16]

    @cached_property
    def outline(self):
        """Closed polyline through the nodes (and corners) in parameter order."""
        if self.kind != "polygon":
            return self.z
        t = np.concatenate([self.t, self.corner_t])
        p = np.concatenate([self.z, self.vertices])
        return p[np.argsort(t, kind="stable")]

    @cached_property
    def arclength_coordinate(self):
        """Arclength from the start of the parametrization to every node."""
        if self.kind == "polygon":
            return self.t * self.length / TWO_PI
        from ._quadrature import spectral_antiderivative

        return np.real(spectral_antiderivative(self.speed))

    @cached_property
    def interior_point(self):
        """A point well inside the curve (area centroid when it is interior)."""
        x, y = self.z.real, self.z.imag
        dx, dy = (self.dz * self.w).real, (self.dz * self.w).imag
        area = self.area
        c = complex(np.sum(x * x * dy) / (2 * area), -np.sum(y * y * dx) / (2 * area))
        candidates = [c] + list(self.z - 0.25 * self.length / (2 * np.pi) * self.normal)
        for p in candidates:
            if winding_numbers(self.outline, [p])[0] == 1:
                return complex(p)
        raise InvalidCurveError("could not locate an interior point")

    def evaluate(self, t):
        """Positions and derivatives at arbitrary parameters (smooth kinds)."""
        if self.param is None:
            raise UnsupportedCurveError("continuous evaluation needs a smooth curve")
        return self.param(np.mod(t, TWO_PI))

    def __repr__(self):
        return (f"JordanCurve(kind={self.kind!r}, n={self.n}, "
                f"length={self.length:.6g}, offset={self.offset:g})")


def build_curve(spec):
    """Discretize ``spec`` into a :class:`JordanCurve`.

    Raises :class:`InvalidCurveError` for self-intersecting, clockwise, or
    degenerate input.
    """
    if isinstance(spec, dict):
        spec = CurveSpec.from_dict(spec)
    spec.validate()
    if spec.kind == "polygon":
        return _build_polygon(spec)
    return _build_smooth(spec, SmoothParametrization(spec))


def _build_smooth(spec, param):
    n = spec.n
    t = TWO_PI * np.arange(n) / n
    z, dz = param(t)
    w = np.full(n, TWO_PI / n)
    return JordanCurve(spec.kind, t, z, dz, w, spec, param=param, offset=param.offset)


def _graded_breaks(P, D):
    """Panel breakpoints on [0, 1]: P uniform panels, the end ones split dyadically."""
    h = 1.0 / P
    head = [0.0] + [h / 2**j for j in range(D, 0, -1)]
    middle = list(h * np.arange(1, P))
    tail = [1.0 - h / 2**j for j in range(1, D + 1)] + [1.0]
    return np.array(head + middle + tail)


def _build_polygon(spec):
    v = np.asarray(spec.vertices, dtype=complex)
    edges = np.roll(v, -1) - v
    lengths = np.abs(edges)
    L = lengths.sum()
    corner_t = TWO_PI * np.concatenate([[0.0], np.cumsum(lengths)[:-1]]) / L
    xg, wg = gauss_legendre(spec.order)
    breaks = _graded_breaks(spec.panels_per_side, spec.grading_depth)

    ts, dzs, ws, zs, bounds = [], [], [], [], []
    for i, (edge, ell, t0) in enumerate(zip(edges, lengths, corner_t)):
        dt_side = TWO_PI * ell / L
        for a, b in zip(breaks[:-1], breaks[1:]):
            frac = a + (b - a) * xg
            ts.append(t0 + dt_side * frac)
            zs.append(v[i] + edge * frac)
            dzs.append(np.full(xg.size, edge / dt_side))
            ws.append(dt_side * (b - a) * wg)
            bounds.append((t0 + dt_side * a, t0 + dt_side * b))
    return JordanCurve(
        "polygon",
        np.concatenate(ts),
        np.concatenate(zs),
        np.concatenate(dzs),
        np.concatenate(ws),
        spec,
        corner_t=corner_t,
        vertices=v,
        panel_bounds=np.array(bounds),
        order=spec.order,
    )


def offset_curve(curve, eps):
    """Parallel curve ``z + i*eps*T``; ``eps > 0`` moves inward.

    Raises :class:`OffsetTooLargeError` when the result is not a simple
    counterclockwise curve.
    """
    if not curve.is_smooth:
        raise UnsupportedCurveError("offsets are only defined for smooth curves")
    spec = curve.spec
    if spec.kind == "disc" and curve.offset == 0.0:
        if eps >= spec.radius:
            raise OffsetTooLargeError(f"offset {eps} collapses disc of radius {spec.radius}")
        from dataclasses import replace

        return build_curve(replace(spec, radius=spec.radius - eps))
    param = SmoothParametrization(spec, curve.offset + eps)
    out = _build_smooth(spec, param)
    if out.area <= 0 or np.any(out.speed == 0) or not _is_simple(out.z):
        raise OffsetTooLargeError(f"offset {eps} produces a self-intersecting curve")
    return out


@dataclass(frozen=True, eq=False)
class EvaluationGrid:
    """Target points labelled by side of the curve and distance to it."""

    points: np.ndarray
    winding: np.ndarray
    distance: np.ndarray
    near: np.ndarray
    curve_tag: str = ""

    @property
    def interior(self):
        return self.winding == 1

    @property
    def exterior(self):
        return self.winding == 0

    @property
    def classification(self):
        return np.where(self.interior, "interior", "exterior")

    @property
    def labels(self):
        """Classification with near-boundary points called out."""
        return np.where(self.near, "near-boundary", self.classification)

    def __len__(self):
        return self.points.size


def _segment_distance(p, a, b):
    ab = b - a
    ab2 = np.abs(ab) ** 2
    s = np.real((p[:, None] - a[None, :]) * np.conj(ab)[None, :]) / ab2[None, :]
    s = np.clip(s, 0.0, 1.0)
    return np.abs(p[:, None] - (a[None, :] + s * ab[None, :])).min(axis=1)


def winding_numbers(polyline, points, chunk=2048):
    """Winding number of a closed polyline about each point."""
    points = np.atleast_1d(np.asarray(points, dtype=complex))
    a = polyline
    b = np.roll(polyline, -1)
    out = np.empty(points.size)
    with np.errstate(invalid="ignore", divide="ignore"):
        for lo in range(0, points.size, chunk):
            p = points[lo:lo + chunk, None]
            ang = np.angle((b[None, :] - p) / (a[None, :] - p))
            out[lo:lo + chunk] = ang.sum(axis=1) / TWO_PI
    return np.rint(np.nan_to_num(out)).astype(int)


def classify_points(curve, points, near_threshold=None, chunk=2048):
    """Label ``points`` interior/exterior by winding number and measure distance.

    Points closer than ``near_threshold`` (default five node spacings) to the
    discretized curve are flagged ``near``.
    """
    if near_threshold is None:
        near_threshold = curve.near_threshold
    points = np.atleast_1d(np.asarray(points, dtype=complex)).ravel()
    poly = curve.outline
    nxt = np.roll(poly, -1)
    dist = np.empty(points.size)
    for lo in range(0, points.size, chunk):
        dist[lo:lo + chunk] = _segment_distance(points[lo:lo + chunk], poly, nxt)
    wind = winding_numbers(poly, points, chunk)
    wind[dist == 0] = 0
    return EvaluationGrid(points, wind, dist, dist < near_threshold, curve.tag)
