"""Discrete Fourier machinery for uniformly sampled closed curves.

Samples are treated as values of a 1-periodic function of normalized
arclength, one transform per coordinate. The forward transform carries the
``1/N`` factor so the zeroth coefficient is the sample centroid.
"""

from __future__ import annotations

import numpy as np

from .geometry import ClosedPolyline, _coords, polygon_length

__all__ = [
    "dft",
    "frequencies",
    "heat_multiplier",
    "heat_step",
    "idft",
    "spectral_curvature",
]


def _check_even(N: int) -> None:
    if N < 4 or N % 2:
        raise ValueError(f"sample count must be even and at least 4, got {N}")


def frequencies(N: int) -> np.ndarray:
    """Integer frequencies in standard order ``0, 1, ..., N/2-1, -N/2, ..., -1``."""
    return np.fft.fftfreq(N, d=1.0 / N)


def dft(samples) -> np.ndarray:
    """Forward transform ``c_k = (1/N) sum_j x_j exp(-2 pi i k j / N)``.

    Parameters
    ----------
    samples : array_like, shape (N,) or (N, d)

    Returns
    -------
    ndarray of complex, same shape, rows in :func:`frequencies` order.
    """
    x = _coords(samples)
    _check_even(len(x))
    return np.fft.fft(x, axis=0, norm="forward")


def idft(coeffs) -> np.ndarray:
    """Inverse of :func:`dft`. Returns the real part for real-valued curves."""
    c = np.asarray(coeffs)
    _check_even(len(c))
    return np.fft.ifft(c, axis=0, norm="forward")


def heat_multiplier(h: float, L: float, N: int) -> np.ndarray:
    """Decay factors ``exp(-4 pi^2 k^2 h / L^2)`` in :func:`frequencies` order."""
    if h < 0:
        raise ValueError("h must be non-negative")
    if L <= 0:
        raise ValueError("L must be positive")
    k = frequencies(N)
    return np.exp(-4.0 * np.pi**2 * k**2 * h / L**2)


def _heat(x: np.ndarray, h: float, L: float) -> np.ndarray:
    N = len(x)
    k = np.arange(N // 2 + 1)
    m = np.exp(-4.0 * np.pi**2 * k**2 * (h / L**2))
    return np.fft.irfft(np.fft.rfft(x, axis=0) * m[:, None], n=N, axis=0)


def heat_step(P, h: float, L: float) -> ClosedPolyline:
    """Evolve the samples by ``X_t = X_ss / L^2`` for time ``h`` (exact in Fourier space).

    ``P`` is expected to be uniformly resampled; ``L`` sets the diffusivity.
    """
    x = _coords(P)
    _check_even(len(x))
    if h < 0:
        raise ValueError("h must be non-negative")
    if L <= 0:
        raise ValueError("L must be positive")
    return ClosedPolyline(_heat(x, h, L), merge_tol=None)


def spectral_curvature(P) -> np.ndarray:
    """Curvature vectors ``(1/L^2) F^-1 (-4 pi^2 k^2) F X`` at the samples.

    ``P`` must already be uniformly resampled; ``L`` is its polygon length.
    """
    x = _coords(P)
    N = len(x)
    _check_even(N)
    k = frequencies(N)
    c = np.fft.fft(x, axis=0) * (-4.0 * np.pi**2 * k**2)[:, None]
    return np.fft.ifft(c, axis=0).real / polygon_length(x) ** 2
