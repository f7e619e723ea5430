"""Small quadrature and spectral-calculus helpers shared by the modules."""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=32)
def gauss_legendre(q):
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(q)
    return (x + 1) / 2, w / 2


def barycentric_weights(x):
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    return 1.0 / diff.prod(axis=1)


@lru_cache(maxsize=32)
def _legendre_matrices(q):
    x, _ = gauss_legendre(q)
    lam = barycentric_weights(x)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    D = (lam[None, :] / lam[:, None]) / diff
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))

    # integral from 0 to x_i of the interpolant: invert the Legendre
    # Vandermonde and integrate the basis exactly
    V = np.polynomial.legendre.legvander(2 * x - 1, q - 1)
    Vinv = np.linalg.inv(V)
    Ix = np.empty((q, q))
    for k in range(q):
        c = np.zeros(q)
        c[k] = 1.0
        anti = np.polynomial.legendre.legint(c, lbnd=-1)
        Ix[:, k] = np.polynomial.legendre.legval(2 * x - 1, anti) / 2
    S = Ix @ Vinv
    return D, S


def panel_diff_matrix(q):
    """Differentiation matrix on the q Gauss nodes of [0, 1]."""
    return _legendre_matrices(q)[0]


def panel_cumint_matrix(q):
    """Matrix mapping nodal values to integrals from 0 to each node on [0, 1]."""
    return _legendre_matrices(q)[1]


def _wavenumbers(n):
    k = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        k[n // 2] = 0.0
    return k


def spectral_derivative(f, period=2 * np.pi):
    """Derivative of equispaced periodic samples via FFT."""
    f = np.asarray(f)
    n = f.shape[-1]
    k = _wavenumbers(n) * (2 * np.pi / period)
    return np.fft.ifft(1j * k * np.fft.fft(f, axis=-1), axis=-1)


def spectral_antiderivative(f, period=2 * np.pi):
    """Integral from the first node to every node of equispaced periodic samples.

    The mean of ``f`` contributes a linear term, so non-periodic
    antiderivatives are represented exactly.
    """
    f = np.asarray(f, dtype=complex)
    n = f.size
    t = np.arange(n) * period / n
    c = np.fft.fft(f) / n
    mean = c[0]
    k = _wavenumbers(n) * (2 * np.pi / period)
    c[0] = 0.0
    nz = k != 0
    g = np.zeros(n, dtype=complex)
    g[nz] = c[nz] / (1j * k[nz])
    if n % 2 == 0:
        g[n // 2] = 0.0
    F = np.fft.ifft(g) * n
    return mean * t + F - F[0]


def trig_interpolant(samples, period=2 * np.pi):
    """Return a callable evaluating the trigonometric interpolant of samples."""
    samples = np.asarray(samples, dtype=complex)
    n = samples.size
    c = np.fft.fft(samples) / n
    k = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        # split the Nyquist mode symmetrically so real data stays real
        c = np.append(c, c[n // 2] / 2)
        c[n // 2] /= 2
        k = np.append(k, n / 2)
        k[n // 2] = -n / 2
    omega = 2 * np.pi / period

    def evaluate(t):
        t = np.asarray(t, dtype=float)
        return np.exp(1j * omega * np.multiply.outer(t, k)) @ c

    return evaluate


def periodic_resample(samples, m):
    """Resample equispaced periodic data from n to m points by zero padding."""
    samples = np.asarray(samples, dtype=complex)
    n = samples.size
    if m == n:
        return samples.copy()
    c = np.fft.fft(samples)
    out = np.zeros(m, dtype=complex)
    half = (min(n, m) - 1) // 2
    out[: half + 1] = c[: half + 1]
    if half:
        out[-half:] = c[-half:]
    if n % 2 == 0 and m > n:
        out[n // 2] = c[n // 2] / 2
        out[m - n // 2] = c[n // 2] / 2
    return np.fft.ifft(out) * (m / n)
