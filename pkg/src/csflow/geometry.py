"""Closed polylines and parametrization-independent measurements.

A discrete closed curve is an ordered cyclic tuple of points in R^d. The
polygon obtained by joining consecutive points (and the last point back to
the first) carries the length, the arclength parametrization used for
resampling, and the turning-angle total curvature.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "ClosedPolyline",
    "DegenerateCurveError",
    "arclength_table",
    "aspect_ratio",
    "chord_total_curvature",
    "extremity_count",
    "polygon_length",
    "recenter_rescale",
    "resample_uniform",
    "signed_area",
    "turning_total_curvature",
]

MERGE_TOL = 1e-14


class DegenerateCurveError(ValueError):
    """Raised when a measurement is undefined for a flattened or empty curve."""


class ClosedPolyline:
    """Ordered cyclic sequence of points in d-dimensional space.

    Consecutive points closer than ``merge_tol`` times the bounding-box
    diagonal are merged on construction. The stored array is read-only.

    Parameters
    ----------
    points : array_like, shape (n, d)
        Vertices in traversal order; the closing edge is implicit.
    merge_tol : float or None
        Relative tolerance for merging coincident neighbours. ``None``
        disables merging (the caller guarantees distinct neighbours).
    """

    __slots__ = ("_points",)

    def __init__(self, points, *, merge_tol: float | None = MERGE_TOL):
        pts = np.array(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] < 2:
            raise ValueError(f"expected an (n, d) array with d >= 2, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        if merge_tol is not None and len(pts) > 1:
            pts = _merge_coincident(pts, merge_tol)
        if len(pts) < 3:
            raise ValueError(f"a closed polyline needs at least 3 distinct points, got {len(pts)}")
        pts.flags.writeable = False
        self._points = pts

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def dim(self) -> int:
        return self._points.shape[1]

    def __len__(self) -> int:
        return len(self._points)

    def __array__(self, dtype=None, copy=None):
        if copy:
            return self._points.astype(dtype or float, copy=True)
        if dtype is None:
            return self._points
        return self._points.astype(dtype)

    def __repr__(self) -> str:
        return f"ClosedPolyline(n={len(self)}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClosedPolyline):
            return NotImplemented
        return self._points.shape == other._points.shape and bool(
            np.array_equal(self._points, other._points)
        )

    __hash__ = None


def _merge_coincident(pts: np.ndarray, tol: float) -> np.ndarray:
    span = np.linalg.norm(pts.max(axis=0) - pts.min(axis=0))
    if span == 0.0:
        return pts[:1]
    thresh = tol * span
    keep = [0]
    for i in range(1, len(pts)):
        if np.linalg.norm(pts[i] - pts[keep[-1]]) > thresh:
            keep.append(i)
    # closing edge
    while len(keep) > 1 and np.linalg.norm(pts[keep[-1]] - pts[keep[0]]) <= thresh:
        keep.pop()
    return pts[keep]


def _coords(P) -> np.ndarray:
    if isinstance(P, ClosedPolyline):
        return P.points
    return np.asarray(P, dtype=float)


def _edges(x: np.ndarray) -> np.ndarray:
    return np.roll(x, -1, axis=0) - x


def polygon_length(P) -> float:
    """Sum of the edge lengths of the closed polygon through ``P``."""
    return float(np.linalg.norm(_edges(_coords(P)), axis=1).sum())


def arclength_table(P) -> np.ndarray:
    """Cumulative chord lengths ``l_0 = 0, ..., l_n = L`` (n + 1 entries)."""
    seg = np.linalg.norm(_edges(_coords(P)), axis=1)
    table = np.empty(len(seg) + 1)
    table[0] = 0.0
    np.cumsum(seg, out=table[1:])
    return table


def _resample(x: np.ndarray, n_out: int) -> np.ndarray:
    table = arclength_table(x)
    closed = np.vstack([x, x[:1]])
    targets = np.arange(n_out) * (table[-1] / n_out)
    return np.column_stack([np.interp(targets, table, closed[:, j]) for j in range(x.shape[1])])


def resample_uniform(P, N: int) -> ClosedPolyline:
    """Place ``N`` points at equal arclength spacing ``L/N`` along the polygon.

    The first output point coincides with the first input point.
    """
    if N < 3:
        raise ValueError(f"N must be at least 3, got {N}")
    return ClosedPolyline(_resample(_coords(P), int(N)), merge_tol=None)


def _unit_tangents(x: np.ndarray) -> np.ndarray:
    e = _edges(x)
    norms = np.linalg.norm(e, axis=1)
    # zero-length edges are skipped, which merges their endpoints
    live = norms > 0.0
    if live.sum() < 2:
        raise DegenerateCurveError("polyline has fewer than two non-degenerate edges")
    return e[live] / norms[live, None]


def turning_total_curvature(P) -> float:
    """Total turning angle: sum over vertices of the angle in [0, pi] between
    incoming and outgoing edge directions."""
    T = _unit_tangents(_coords(P))
    dots = np.einsum("ij,ij->i", np.roll(T, 1, axis=0), T)
    return float(np.arccos(np.clip(dots, -1.0, 1.0)).sum())


def chord_total_curvature(P) -> float:
    """Length of the tantrix measured with chords in R^d: sum |T_i - T_{i-1}|."""
    T = _unit_tangents(_coords(P))
    return float(np.linalg.norm(T - np.roll(T, 1, axis=0), axis=1).sum())


def _require_planar(x: np.ndarray) -> None:
    if x.shape[1] != 2:
        raise ValueError(f"only defined for planar curves, got dim={x.shape[1]}")


def signed_area(P) -> float:
    """Shoelace area; positive for counterclockwise traversal."""
    x = _coords(P)
    _require_planar(x)
    nxt = np.roll(x, -1, axis=0)
    return 0.5 * float(np.sum(x[:, 0] * nxt[:, 1] - nxt[:, 0] * x[:, 1]))


def aspect_ratio(P) -> float:
    """Ratio of the x-extent to the y-extent.

    Raises
    ------
    DegenerateCurveError
        If the y-extent is below 1e-14 times the x-extent (the curve has
        flattened onto a horizontal segment; treat the ratio as infinite).
    """
    x = _coords(P)
    _require_planar(x)
    dx, dy = np.ptp(x, axis=0)
    if dy < 1e-14 * dx or dy == 0.0:
        raise DegenerateCurveError("y-extent vanishes; aspect ratio is effectively infinite")
    return float(dx / dy)


def _component_extrema(v: np.ndarray, thresh: float) -> int:
    # collapse plateaus, cyclically
    keep = np.flatnonzero(v != np.roll(v, 1))
    if len(keep) == 0:
        return 0
    w = v[keep]
    d = np.sign(w - np.roll(w, 1))
    turn = np.flatnonzero(d != np.roll(d, -1))
    vals = list(w[turn])
    # drop the smallest adjacent max/min pair until every swing exceeds thresh
    while len(vals) > 2:
        swings = np.abs(np.diff(vals + vals[:1]))
        i = int(np.argmin(swings))
        if swings[i] > thresh:
            break
        j = (i + 1) % len(vals)
        for idx in sorted((i, j), reverse=True):
            del vals[idx]
    if len(vals) == 2 and abs(vals[0] - vals[1]) <= thresh:
        return 0
    return len(vals)


def extremity_count(P, amplitude_tol: float = 1e-6) -> int:
    """Number of coordinate-wise local maxima and minima along the samples.

    Extrema are counted per component on the cyclic sample sequence after
    merging plateaus; adjacent max/min pairs whose swing does not exceed
    ``amplitude_tol`` times that component's extent are discarded.
    """
    x = _coords(P)
    total = 0
    for j in range(x.shape[1]):
        v = x[:, j]
        span = float(np.ptp(v))
        if span == 0.0:
            continue
        total += _component_extrema(v, amplitude_tol * span)
    return total


def centroid(P) -> np.ndarray:
    """Edge-length weighted average of edge midpoints (curve center of mass)."""
    x = _coords(P)
    nxt = np.roll(x, -1, axis=0)
    w = np.linalg.norm(nxt - x, axis=1)
    return ((x + nxt) * 0.5 * w[:, None]).sum(axis=0) / w.sum()


def recenter_rescale(P) -> ClosedPolyline:
    """Translate the curve's center of mass to the origin and scale to unit length."""
    x = _coords(P)
    y = (x - centroid(x)) / polygon_length(x)
    return ClosedPolyline(y, merge_tol=None)
