"""Initial curves: circles, segments, figure-eights and a convoluted Lissajous curve.

Smooth kinds are evaluated at uniform parameter values ``r_j = j / samples``
of their parametrization over [0, 1). Polygon kinds (``square``,
``dcs_polygon``) are placed at uniform arclength along the polygon.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import ClosedPolyline, _coords, _resample

__all__ = ["KINDS", "ShapeSpec", "generate", "mode_projection", "verify_symmetry"]

TAU = 2.0 * np.pi

# default parameters per kind; generate() rejects unknown keys
KINDS: dict[str, dict[str, float]] = {
    "circle": {"radius": 1.0, "cx": 0.0, "cy": 0.0},
    "nfold_circle": {"radius": 1.0, "n": 2},
    "ellipse": {"a": 3.0, "b": 1.0},
    "square": {"side": 1.0},
    "dcs_polygon": {"x0": -1.0, "y0": 0.0, "x1": 1.0, "y1": 0.0},
    "dcs_smooth": {"length": 2.0},
    "infinity_xy": {"scale": 1.0},
    "infinity_y": {"scale": 1.0, "bend": 0.4},
    "infinity_central": {"scale": 1.0, "shear": 0.5},
    "infinity_perturbed": {"scale": 1.0, "amplitude": 0.15, "width": 1.0 / 16},
    "two_circle_infinity": {"r_small": 0.25, "r_big": 0.75},
    "convoluted": {"ax": 3.0, "ay": 1.0, "fx": 3, "fy": 8},
}


@dataclass(frozen=True)
class ShapeSpec:
    kind: str
    params: dict[str, float] = field(default_factory=dict)
    samples: int = 512

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown shape kind {self.kind!r}; choose from {sorted(KINDS)}")
        unknown = set(self.params) - set(KINDS[self.kind])
        if unknown:
            raise ValueError(f"unknown parameters for {self.kind}: {sorted(unknown)}")
        if self.samples < 8 or self.samples % 2:
            raise ValueError(f"samples must be even and at least 8, got {self.samples}")

    def resolved(self) -> dict[str, float]:
        return {**KINDS[self.kind], **self.params}


def _positive(p: dict, *names: str) -> None:
    for n in names:
        if not p[n] > 0:
            raise ValueError(f"{n} must be positive, got {p[n]}")


def _figure_eight(r: np.ndarray, scale: float, start_at_crossing: bool) -> np.ndarray:
    # trace of (cos(u - pi/2), sin(pi - 2u)); u = pi/2 - 2 pi r starts at the
    # rightmost point, u = 2 pi r starts at the crossing
    u = TAU * r if start_at_crossing else np.pi / 2 - TAU * r
    return scale * np.column_stack([np.cos(u - np.pi / 2), np.sin(np.pi - 2 * u)])


def generate(spec: ShapeSpec) -> ClosedPolyline:
    """Sample the initial curve described by ``spec``."""
    p = spec.resolved()
    n = spec.samples
    r = np.arange(n) / n
    kind = spec.kind

    if kind == "circle":
        _positive(p, "radius")
        pts = p["radius"] * np.column_stack([np.cos(TAU * r), np.sin(TAU * r)])
        pts += [p["cx"], p["cy"]]
    elif kind == "nfold_circle":
        _positive(p, "radius")
        m = int(p["n"])
        if m < 1 or m != p["n"]:
            raise ValueError(f"n must be a positive integer, got {p['n']}")
        pts = p["radius"] * np.column_stack([np.cos(TAU * m * r), np.sin(TAU * m * r)])
    elif kind == "ellipse":
        _positive(p, "a", "b")
        pts = np.column_stack([p["a"] * np.cos(TAU * r), p["b"] * np.sin(TAU * r)])
    elif kind == "square":
        _positive(p, "side")
        a = p["side"]
        corners = np.array([[0, 0], [a, 0], [a, a], [0, a]], dtype=float)
        pts = _resample(corners, n)
    elif kind == "dcs_polygon":
        P0 = np.array([p["x0"], p["y0"]])
        P1 = np.array([p["x1"], p["y1"]])
        if np.allclose(P0, P1):
            raise ValueError("segment endpoints must differ")
        # out and back; the interior turning point sits at r = 1/2
        w = np.where(r < 0.5, 2 * r, 2 - 2 * r)[:, None]
        pts = (1 - w) * P0 + w * P1
    elif kind == "dcs_smooth":
        _positive(p, "length")
        pts = np.column_stack([p["length"] / 4 * np.cos(TAU * r), np.zeros(n)])
    elif kind == "infinity_xy":
        _positive(p, "scale")
        pts = _figure_eight(r, p["scale"], start_at_crossing=False)
    elif kind == "infinity_y":
        _positive(p, "scale")
        # (x, y) -> (x, y + c x^2) has unit Jacobian and commutes with x -> -x
        pts = _figure_eight(r, p["scale"], start_at_crossing=True)
        pts[:, 1] += p["bend"] * pts[:, 0] ** 2 / p["scale"]
    elif kind == "infinity_central":
        _positive(p, "scale")
        pts = _figure_eight(r, p["scale"], start_at_crossing=True)
        pts[:, 1] += p["shear"] * pts[:, 0]
    elif kind == "infinity_perturbed":
        _positive(p, "scale", "width")
        if p["amplitude"] < 0:
            raise ValueError("bump amplitude must be non-negative")
        pts = _figure_eight(r, p["scale"], start_at_crossing=False)
        # Gaussian bump centred on the rightmost point (r = 0), radial from the origin
        dist = np.minimum(r, 1 - r)
        sigma = p["width"] / 4
        bump = p["amplitude"] * p["scale"] * np.exp(-0.5 * (dist / sigma) ** 2)
        bump[dist > p["width"] / 2] = 0.0
        radial = pts / np.linalg.norm(pts, axis=1, keepdims=True).clip(min=1e-300)
        pts = pts + bump[:, None] * radial
    elif kind == "two_circle_infinity":
        _positive(p, "r_small", "r_big")
        pts = _two_circles(r, p["r_small"], p["r_big"])
    elif kind == "convoluted":
        _positive(p, "ax", "ay")
        pts = np.column_stack(
            [p["ax"] * np.cos(TAU * p["fx"] * r), p["ay"] * np.sin(TAU * p["fy"] * r)]
        )
    else:  # pragma: no cover - guarded by ShapeSpec
        raise ValueError(kind)
    return ClosedPolyline(pts)


def _two_circles(r: np.ndarray, r_small: float, r_big: float) -> np.ndarray:
    # small circle counterclockwise on the left, then large circle clockwise on
    # the right; both tangent to the y-axis at the origin, parameter split by length
    split = r_small / (r_small + r_big)
    pts = np.empty((len(r), 2))
    left = r < split
    a = TAU * r[left] / split
    pts[left] = np.column_stack([-r_small + r_small * np.cos(a), r_small * np.sin(a)])
    b = TAU * (r[~left] - split) / (1 - split)
    pts[~left] = np.column_stack([r_big - r_big * np.cos(b), r_big * np.sin(b)])
    return pts


_REFLECT_Y = np.array([-1.0, 1.0])


def verify_symmetry(P, sym: str) -> float:
    """Largest violation of a parametrization symmetry over paired samples.

    ``x_axis``
        ``x(k/4 + s) = (-1)^k x(k/4 - s)``, k = 1..4 (needs samples % 8 == 0).
    ``y_axis``
        ``y(k/8 + s) = (-1)^(k+1) y(k/8 - s)``, k = 1..8 (needs samples % 8 == 0).
    ``central``
        ``X(1/2 + s) = -X(1/2 - s)``.
    ``reflect_y``
        ``X(1/2 + s) = diag(-1, 1) X(1/2 - s)``.
    ``antipodal``
        ``X(s + 1/2) = -X(s)``.
    ``mirror_y``
        ``X(s + 1/2) = diag(-1, 1) X(s)``.
    """
    x = _coords(P)
    n = len(x)
    j = np.arange(n)
    if sym in ("x_axis", "y_axis"):
        if n % 8:
            raise ValueError(f"{sym} check needs a sample count divisible by 8, got {n}")
        if x.shape[1] != 2:
            raise ValueError("axis symmetries are defined for planar curves")
        if sym == "x_axis":
            comp, parts, sign0 = 0, 4, 0
        else:
            comp, parts, sign0 = 1, 8, 1
        v = x[:, comp]
        worst = 0.0
        for k in range(1, parts + 1):
            c = k * n // parts
            sign = (-1) ** (k + sign0)
            worst = max(worst, np.max(np.abs(v[(c + j) % n] - sign * v[(c - j) % n])))
        return float(worst)
    if sym in ("central", "reflect_y"):
        if n % 2:
            raise ValueError("needs an even sample count")
        m = -1.0 if sym == "central" else _REFLECT_Y
        c = n // 2
        return float(np.max(np.abs(x[(c + j) % n] - m * x[(c - j) % n])))
    if sym in ("antipodal", "mirror_y"):
        if n % 2:
            raise ValueError("needs an even sample count")
        m = -1.0 if sym == "antipodal" else _REFLECT_Y
        return float(np.max(np.abs(x[(j + n // 2) % n] - m * x)))
    raise ValueError(f"unknown symmetry {sym!r}")


def mode_projection(P, component: int, mode: tuple[int, str]) -> float:
    """Discrete projection ``(1/N) sum_j X_j[component] trig(2 pi f j / N)``.

    ``component`` is 1-based (1 = x, 2 = y); ``mode`` is ``(f, "cos" | "sin")``.
    """
    x = _coords(P)
    if not 1 <= component <= x.shape[1]:
        raise ValueError(f"component must be in 1..{x.shape[1]}, got {component}")
    freq, phase = mode
    trig = {"cos": np.cos, "sin": np.sin}[phase]
    n = len(x)
    return float(np.mean(x[:, component - 1] * trig(TAU * freq * np.arange(n) / n)))
