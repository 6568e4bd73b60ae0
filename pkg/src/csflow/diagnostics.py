"""Closed-form oracles for special solutions, plus shape diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import DegenerateCurveError, _coords, polygon_length, signed_area

__all__ = [
    "CircleLaw",
    "circle_length",
    "circle_recursion",
    "compare_to_dcs_limit",
    "dcs_first_step_length",
    "dcs_heated_length",
    "isoperimetric_ratio",
]


@dataclass(frozen=True)
class CircleLaw:
    """Exact length of a shrinking (possibly multiply covered) circle of initial length ``L0``.

    For an n-fold circle pass the length of one covering times n; the
    extinction time ``L0^2 / (8 pi^2)`` then refers to a single covering,
    i.e. call with ``L0 / n``.
    """

    L0: float

    def __post_init__(self):
        if not self.L0 > 0:
            raise ValueError("L0 must be positive")

    @property
    def extinction_time(self) -> float:
        return self.L0**2 / (8 * math.pi**2)


def circle_length(law: CircleLaw, t: float) -> float:
    """``sqrt(L0^2 - 8 pi^2 t)`` for ``0 <= t < extinction_time``."""
    if t < 0 or t >= law.extinction_time:
        raise ValueError(f"t={t} outside [0, {law.extinction_time})")
    return math.sqrt(law.L0**2 - 8 * math.pi**2 * t)


def circle_recursion(L_k: float, h: float) -> float:
    """One step of the discrete circle law ``L_{k+1} = exp(-4 pi^2 h / L_k^2) L_k``."""
    if not L_k > 0:
        raise ValueError("L_k must be positive")
    if h < 0:
        raise ValueError("h must be non-negative")
    return math.exp(-4 * math.pi**2 * h / L_k**2) * L_k


def _odd_series(L0: float, h: float, max_mode: int) -> float:
    if not L0 > 0 or not h > 0 or max_mode < 1:
        raise ValueError("need L0 > 0, h > 0, max_mode >= 1")
    ell = np.arange(1, max_mode + 1, 2, dtype=float)
    return float(np.sum(np.exp(-4 * math.pi**2 * ell**2 * h / L0**2) / ell**2))


def dcs_first_step_length(L0: float, h: float, max_mode: int) -> float:
    """Series ``L0 * sum_{odd l <= max_mode} 2/(pi^2 l^2) exp(-4 pi^2 l^2 h / L0^2)``.

    Bounded by ``L0/4``. This is a quarter of the length that one heat step
    actually produces from a doubly covered segment; see :func:`dcs_heated_length`.
    """
    return L0 * 2 / math.pi**2 * _odd_series(L0, h, max_mode)


def dcs_heated_length(L0: float, h: float, max_mode: int) -> float:
    """Length after diffusing the normal parametrization of a doubly covered
    segment of length ``L0`` for time ``h`` at diffusivity ``1/L0^2``.

    The heated curve is monotone between its two endpoints, so its length is
    four times the endpoint amplitude ``|Y(0)| = (2 L0/pi^2) sum_odd exp(...)/l^2``.
    Tends to ``L0`` as ``h -> 0``.
    """
    return L0 * 8 / math.pi**2 * _odd_series(L0, h, max_mode)


def _point_segment_distance(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = b - a
    t = np.clip((pts - a) @ d / (d @ d), 0.0, 1.0)
    return np.linalg.norm(pts - (a + t[:, None] * d), axis=1)


def compare_to_dcs_limit(P, samples: int = 1025) -> float:
    """Hausdorff distance between the samples of ``P`` and the segment
    ``[-1/4, 1/4] x {0}`` (a unit-length doubly covered segment).

    ``P`` should already be recentered and rescaled to unit length. The
    segment side is sampled at ``samples`` points and measured against the
    polygon edges of ``P``.
    """
    x = _coords(P)
    a = np.array([-0.25, 0.0])
    b = np.array([0.25, 0.0])
    to_segment = _point_segment_distance(x, a, b).max()
    seg = np.column_stack([np.linspace(-0.25, 0.25, samples), np.zeros(samples)])
    nxt = np.roll(x, -1, axis=0)
    # distance from each segment sample to the nearest polygon edge
    dist = np.full(samples, np.inf)
    for p, q in zip(x, nxt):
        if np.array_equal(p, q):
            dist = np.minimum(dist, np.linalg.norm(seg - p, axis=1))
        else:
            dist = np.minimum(dist, _point_segment_distance(seg, p, q))
    return float(max(to_segment, dist.max()))


def isoperimetric_ratio(P) -> float:
    """``L^2 / (4 pi |A|)``; equals 1 for a circle.

    Raises
    ------
    DegenerateCurveError
        If ``|A| <= 1e-12 L^2`` (e.g. a balanced figure-eight).
    """
    L = polygon_length(P)
    A = abs(signed_area(P))
    if A <= 1e-12 * L**2:
        raise DegenerateCurveError("enclosed signed area vanishes")
    return L**2 / (4 * math.pi * A)
