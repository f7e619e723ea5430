"""Closed-form and brute-force references for the Cauchy machinery.

Nothing here shares code with the singularity-subtraction main path:
Fourier data split by frequency, rational data split by pole location,
a principal value done by adaptive quadrature with symmetric exclusion,
and the Cauchy integral of polynomial data on a circular arc in closed form.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from ._quadrature import trig_interpolant
from .cauchy import BoundaryFunction
from .exceptions import ExtrapolationError, UnsupportedCurveError
from .geometry import classify_points

PV_DELTAS = (1e-2, 1e-3, 1e-4)


class PoleOnCurveError(ValueError):
    """A pole lies within three node spacings of the curve."""


@dataclass(frozen=True)
class FourierData:
    """Trigonometric polynomial ``sum a_n e^{int}``, stored as ``{n: a_n}``."""

    coeffs: dict = field(default_factory=dict)

    @classmethod
    def random(cls, M, rng=None, real=False):
        rng = np.random.default_rng(rng)
        n = np.arange(-M, M + 1)
        a = rng.standard_normal(n.size) + 1j * rng.standard_normal(n.size)
        if real:
            # a_{-n} = conj(a_n) makes the sum real
            a = (a + np.conj(a[::-1])) / 2
        return cls({int(k): complex(v) for k, v in zip(n, a)})

    @property
    def degree(self):
        return max((abs(n) for n in self.coeffs), default=0)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for n, a in self.coeffs.items():
            out += a * np.exp(1j * n * t)
        return out

    def sample(self, curve):
        """Samples at the parameter nodes (``w = e^{it}`` on the unit circle)."""
        if 4 * self.degree > curve.n:
            raise ValueError(f"degree {self.degree} aliases on {curve.n} nodes")
        return BoundaryFunction(curve.tag, self(curve.t), "fourier")


def fourier_split(data):
    """``(h, H)``: non-negative and negative frequencies."""
    h = {n: a for n, a in data.coeffs.items() if n >= 0 and a != 0}
    H = {n: a for n, a in data.coeffs.items() if n < 0 and a != 0}
    return FourierData(h), FourierData(H)


@dataclass(frozen=True)
class RationalData:
    """``sum r_k / (w - p_k)`` from ``(pole, residue)`` pairs."""

    poles: tuple

    @classmethod
    def simple(cls, *poles):
        return cls(tuple((complex(p), 1.0 + 0j) for p in poles))

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        out = np.zeros(w.shape, dtype=complex)
        for p, r in self.poles:
            out += r / (w - p)
        return out

    def sample(self, curve):
        return BoundaryFunction(curve.tag, self(curve.z), "rational")

    def classify(self, curve):
        """Boolean array, True where the pole is interior."""
        if not self.poles:
            return np.zeros(0, dtype=bool)
        locs = np.array([p for p, _ in self.poles], dtype=complex)
        grid = classify_points(curve, locs)
        bad = grid.distance < 3 * curve.spacing
        if np.any(bad):
            raise PoleOnCurveError(f"poles {locs[bad]} within 3 spacings of the curve")
        return grid.interior


def rational_split(data, curve):
    """``(h, H)`` samples: exterior poles give ``h``, interior poles give ``H``."""
    inside = data.classify(curve)
    h = RationalData(tuple(pr for pr, i in zip(data.poles, inside) if not i))
    H = RationalData(tuple(pr for pr, i in zip(data.poles, inside) if i))
    return (BoundaryFunction(curve.tag, h(curve.z), "h"),
            BoundaryFunction(curve.tag, H(curve.z), "H"))


def _neville_at_zero(x, y):
    """Value at 0 of the polynomial through ``(x, y)``."""
    p = list(y)
    for m in range(1, len(x)):
        p = [(x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]) for i in range(len(p) - 1)]
    return p[0]


def _quad_complex(f, a, b, points):
    edges = np.concatenate([[a], points, [b]])
    total = 0j
    for lo, hi in zip(edges[:-1], edges[1:]):
        re = integrate.quad(lambda t: f(t).real, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)
        im = integrate.quad(lambda t: f(t).imag, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)
        total += re[0] + 1j * im[0]
    return total


def brute_pv(curve, u, j, deltas=PV_DELTAS, rtol=1e-5):
    """Boundary Cauchy transform at node ``j`` by adaptive quadrature.

    The principal value over ``|t - t_j| > delta`` is computed for each
    ``delta``, extrapolated to ``delta = 0`` and ``u_j / 2`` is added.
    ``u`` is a callable of ``t`` or a :class:`BoundaryFunction` (evaluated
    between nodes through its trigonometric interpolant).
    """
    if not curve.is_smooth:
        raise UnsupportedCurveError("brute-force principal value needs a smooth curve")
    if isinstance(u, BoundaryFunction) or not callable(u):
        f = trig_interpolant(np.asarray(u, dtype=complex))
    else:
        f = u
    tj = float(curve.t[j])
    zj = curve.param(np.array([tj]))[0][0]
    uj = complex(np.asarray(f(np.array([tj])))[0])

    def integrand(t):
        z, dz = curve.param(np.array([t]))
        return complex(np.asarray(f(np.array([t])))[0] * dz[0] / (z[0] - zj)) / (2j * np.pi)

    values = []
    for d in deltas:
        a, b = tj + d, tj + 2 * np.pi - d
        # geometric breakpoints resolve the 1/(t - t_j) growth at both ends
        near = d * np.logspace(1, np.log10(1.0 / d), 6)
        near = near[near < np.pi - d]
        pts = np.sort(np.concatenate([tj + near, tj + 2 * np.pi - near]))
        values.append(_quad_complex(integrand, a, b, pts))
    x = np.asarray(deltas, dtype=float)
    full = _neville_at_zero(x, values)
    tail = _neville_at_zero(x[1:], values[1:])
    scale = max(1.0, abs(full))
    if abs(full - tail) > rtol * scale:
        raise ExtrapolationError(
            f"principal value extrapolation unstable: {abs(full - tail):.3g}", values)
    return complex(full + uj / 2)


def disc_cap_cauchy(coeffs, t1, t2, t):
    """Boundary values on the unit circle of the Cauchy integral of ``p chi_cap``.

    ``p(w) = sum coeffs[m] w^m`` and the cap is the arc ``t1 < t < t2``.  The
    limit is taken from inside, so it equals the Szegő projection of the
    cap-restricted datum.  Singular at the two arc endpoints.
    """
    a, b = np.exp(1j * t1), np.exp(1j * t2)
    z = np.exp(1j * np.asarray(t, dtype=float))
    poly = np.zeros(z.shape, dtype=complex)
    pz = np.zeros(z.shape, dtype=complex)
    for m, c in enumerate(coeffs):
        pz += c * z**m
        # int_a^b (w^m - z^m)/(w - z) dw = sum_k z^{m-1-k} (b^{k+1} - a^{k+1})/(k+1)
        for k in range(m):
            poly += c * z ** (m - 1 - k) * (b ** (k + 1) - a ** (k + 1)) / (k + 1)
    sweep = np.mod(np.angle(b - z) - np.angle(a - z), 2 * np.pi)
    log = np.log(np.abs(b - z) / np.abs(a - z)) + 1j * sweep
    return (poly + pz * log) / (2j * np.pi)
