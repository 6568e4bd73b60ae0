"""Named experiments and the diagnostic checks evaluated against their runs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .diagnostics import (
    CircleLaw,
    circle_length,
    circle_recursion,
    compare_to_dcs_limit,
    dcs_first_step_length,
    dcs_heated_length,
    isoperimetric_ratio,
)
from .flow import FROZEN, FlowConfig, Trajectory
from .geometry import DegenerateCurveError, recenter_rescale
from .shapes import ShapeSpec, mode_projection, verify_symmetry

__all__ = ["CHECKS", "PRESETS", "Check", "ExperimentPreset", "evaluate", "get_preset"]


class Check(NamedTuple):
    value: float
    expected: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        def clean(v):
            v = float(v)
            return v if math.isfinite(v) else None

        return {
            "value": clean(self.value),
            "expected": clean(self.expected),
            "tolerance": clean(self.tolerance),
            "pass": bool(self.passed),
        }


CheckFn = Callable[[Trajectory, float], Check]
CHECKS: dict[str, CheckFn] = {}


def _check(name: str):
    def deco(fn: CheckFn) -> CheckFn:
        CHECKS[name] = fn
        return fn

    return deco


def _le(value: float, bound: float, tol: float = 0.0) -> Check:
    return Check(value, bound, tol, bool(value <= bound + tol))


def _close(value: float, expected: float, tol: float) -> Check:
    return Check(value, expected, tol, bool(abs(value - expected) <= tol))


# -- generic -------------------------------------------------------------------


@_check("length_monotone")
def length_monotone(traj: Trajectory, tol: float) -> Check:
    """Largest record-to-record length increase, in units of L0."""
    L = traj.column("length")
    rise = float(np.max(np.diff(L), initial=0.0)) / traj.L0
    return _le(rise, 0.0, tol)


def kappa_rises(traj: Trajectory) -> np.ndarray:
    """Total-curvature increases between records that do not touch an event window."""
    t, k = traj.column("t"), traj.column("kappa_tot")
    out = []
    for i in range(len(t) - 1):
        if traj.in_event(t[i], t[i + 1]) or not np.isfinite(k[i : i + 2]).all():
            continue
        out.append(k[i + 1] - k[i])
    return np.asarray(out)


@_check("kappa_monotone")
def kappa_monotone(traj: Trajectory, tol: float) -> Check:
    return _le(float(np.max(kappa_rises(traj), initial=0.0)), 0.0, tol)


@_check("extremity_monotone")
def extremity_monotone(traj: Trajectory, tol: float) -> Check:
    e = traj.column("extremity")
    return _le(float(np.max(np.diff(e), initial=0.0)), 0.0, tol)


@_check("extinct")
def extinct(traj: Trajectory, tol: float) -> Check:
    ok = traj.reason == "extinction"
    return Check(float(ok), 1.0, tol, ok)


# -- circles ---------------------------------------------------------------------


@_check("extinction_time_half")
def extinction_time_half(traj: Trajectory, tol: float) -> Check:
    if traj.reason != "extinction":
        return Check(float("nan"), 0.5, tol, False)
    return _close(traj.t_end, 0.5, tol)


@_check("circle_law")
def circle_law(traj: Trajectory, tol: float) -> Check:
    """Worst relative deviation from sqrt(L0^2 - 8 pi^2 t) over records with t <= 0.45."""
    law = CircleLaw(traj.L0)
    err = [
        abs(r.length - circle_length(law, r.t)) / traj.L0
        for r in traj.records
        if r.t <= 0.9 * law.extinction_time
    ]
    return _le(max(err), 0.0, tol)


@_check("circle_step_ratio")
def circle_step_ratio(traj: Trajectory, tol: float) -> Check:
    """Worst relative mismatch between each step's length and the discrete circle law."""
    L = traj.step_lengths
    if len(L) < 2:
        return Check(float("nan"), 0.0, tol, False)
    pred = np.array([circle_recursion(a, traj.h) for a in L[:-1]])
    return _le(float(np.max(np.abs(L[1:] / pred - 1))), 0.0, tol)


@_check("initial_kappa_4pi")
def initial_kappa_4pi(traj: Trajectory, tol: float) -> Check:
    return _close(traj.records[0].kappa_tot, 4 * math.pi, tol)


# -- ellipse ---------------------------------------------------------------------


def area_rates(traj: Trajectory) -> np.ndarray:
    """Central differences of the signed area at the records in the middle third."""
    t, A = traj.column("t"), traj.column("area")
    lo, hi = traj.t_end / 3, 2 * traj.t_end / 3
    return np.array(
        [
            (A[i + 1] - A[i - 1]) / (t[i + 1] - t[i - 1])
            for i in range(1, len(t) - 1)
            if lo <= t[i] <= hi
        ]
    )


@_check("area_rate")
def area_rate(traj: Trajectory, tol: float) -> Check:
    """Worst relative deviation of dA/dt from -2 pi in the middle third."""
    rates = area_rates(traj)
    if len(rates) == 0:
        return Check(float("nan"), 0.0, tol, False)
    return _le(float(np.max(np.abs(rates / (-2 * math.pi) - 1))), 0.0, tol)


# -- square ----------------------------------------------------------------------


@_check("initial_kappa_2pi")
def initial_kappa_2pi(traj: Trajectory, tol: float) -> Check:
    return _close(traj.records[0].kappa_tot, 2 * math.pi, tol)


# -- doubly covered segment ------------------------------------------------------------


def _first_step(traj: Trajectory) -> float:
    if len(traj.step_lengths) < 2:
        return float("nan")
    return float(traj.step_lengths[1])


@_check("dcs_quarter_bound")
def dcs_quarter_bound(traj: Trajectory, tol: float) -> Check:
    """First-step length as a fraction of L0, against the bound 1/4."""
    return _le(_first_step(traj) / traj.L0, 0.25, tol)


@_check("dcs_series")
def dcs_series(traj: Trajectory, tol: float) -> Check:
    ref = dcs_first_step_length(traj.L0, traj.h, 101)
    return _le(abs(_first_step(traj) - ref) / ref, 0.0, tol)


@_check("dcs_heated")
def dcs_heated(traj: Trajectory, tol: float) -> Check:
    ref = dcs_heated_length(traj.L0, traj.h, 10001)
    return _le(abs(_first_step(traj) - ref) / ref, 0.0, tol)


# -- figure eights ---------------------------------------------------------------------


@_check("zero_area")
def zero_area(traj: Trajectory, tol: float) -> Check:
    a = float(np.max(np.abs(traj.column("area")))) / traj.L0**2
    return _le(a, 0.0, tol)


@_check("late_flatness")
def late_flatness(traj: Trajectory, tol: float) -> Check:
    """Largest diam_y / diam_x over records in the final tenth of the lifetime."""
    flat = [1.0 / r.aspect for r in traj.records if r.t >= 0.9 * traj.t_end]
    return Check(max(flat), 0.0, tol, bool(max(flat) < tol))


@_check("dcs_limit")
def dcs_limit(traj: Trajectory, tol: float) -> Check:
    d = compare_to_dcs_limit(recenter_rescale(traj.snapshots[-1][2]))
    return Check(d, 0.0, tol, bool(d < tol))


def interior_snapshots(traj: Trajectory, count: int = 3) -> list:
    """The initial snapshot followed by ``count`` interior ones at evenly spaced positions."""
    snaps = traj.snapshots
    inner = snaps[1:-1]
    if len(inner) < count:
        raise ValueError(f"need {count} interior snapshots, have {len(inner)}")
    idx = np.linspace(0, len(inner) - 1, count + 2)[1:-1].round().astype(int)
    return [snaps[0]] + [inner[i] for i in idx]


def eight_projections(P) -> dict[str, float]:
    return {
        "x_sin1": mode_projection(P, 1, (1, "sin")),
        "y_cos1": mode_projection(P, 2, (1, "cos")),
        "y_sin1": mode_projection(P, 2, (1, "sin")),
        "y_sin2": mode_projection(P, 2, (2, "sin")),
    }


@_check("eight_modes")
def eight_modes(traj: Trajectory, tol: float) -> Check:
    """Largest forbidden-mode projection; fails as well if the sin(4 pi) mode is not positive."""
    worst, positive = 0.0, True
    for _, _, P in interior_snapshots(traj):
        pr = eight_projections(P)
        worst = max(worst, abs(pr["x_sin1"]), abs(pr["y_cos1"]), abs(pr["y_sin1"]))
        positive &= pr["y_sin2"] > 0
    return Check(worst, 0.0, tol, bool(worst < tol and positive))


def _symmetry(sym: str) -> CheckFn:
    def fn(traj: Trajectory, tol: float) -> Check:
        worst = max(verify_symmetry(P, sym) for _, _, P in traj.snapshots) / traj.L0
        return _le(worst, 0.0, tol)

    fn.__doc__ = f"Largest ``{sym}`` violation over all snapshots, in units of L0."
    return fn


for _sym in ("x_axis", "y_axis", "central", "mirror_y"):
    CHECKS[f"symmetry_{_sym}"] = _symmetry(_sym)


@_check("round_limit")
def round_limit(traj: Trajectory, tol: float) -> Check:
    """Isoperimetric ratio of the last recorded polyline."""
    try:
        q = isoperimetric_ratio(traj.snapshots[-1][2])
    except DegenerateCurveError:
        q = float("inf")
    return Check(q, 1.0, tol, bool(q < 1.0 + tol))


# -- loop shedding ---------------------------------------------------------------------


def _event_near(traj: Trajectory, lo: float, hi: float):
    hits = [e for e in traj.events if e.t_lo <= hi and lo <= e.t_hi]
    return hits[0] if hits else None


@_check("two_events")
def two_events(traj: Trajectory, tol: float) -> Check:
    return _close(float(len(traj.events)), 2.0, tol)


def _event_check(lo: float, hi: float, drop: float, cusps: int) -> CheckFn:
    def fn(traj: Trajectory, tol: float) -> Check:
        e = _event_near(traj, lo, hi)
        if e is None:
            return Check(float("nan"), drop, tol, False)
        return Check(e.drop, drop, tol, bool(abs(e.drop - drop) <= tol and e.cusp_estimate == cusps))

    fn.__doc__ = f"Event meeting [{lo}, {hi}]: drop near {drop:.4f} rad and {cusps} cusps."
    return fn


CHECKS["first_shedding"] = _event_check(0.25, 0.32, 4 * math.pi, 4)
CHECKS["second_shedding"] = _event_check(0.50, 0.58, 2 * math.pi, 2)


@_check("shedding_event")
def shedding_event(traj: Trajectory, tol: float) -> Check:
    """Largest event drop, which must reach pi/2."""
    best = max((e.drop for e in traj.events), default=0.0)
    return Check(best, math.pi / 2, tol, bool(best >= math.pi / 2 - tol))


# -- catalog ---------------------------------------------------------------------------

_MONO = (("length_monotone", 1e-9), ("kappa_monotone", 1e-3), ("extremity_monotone", 0.0))


@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    shape: ShapeSpec
    config: FlowConfig
    checks: tuple[tuple[str, float], ...] = field(default=_MONO)
    description: str = ""

    def __post_init__(self):
        missing = [c for c, _ in self.checks if c not in CHECKS]
        if missing:
            raise ValueError(f"preset {self.name}: unknown checks {missing}")


def _p(name, kind, params, cfg, checks=(), description="", samples=None):
    shape = ShapeSpec(kind, params, samples or cfg.N)
    return ExperimentPreset(name, shape, cfg, _MONO + tuple(checks), description)


_EIGHT_CFG = FlowConfig(h=1e-4, N=512, max_time=10, record_every=10, snapshot_every=200)

PRESETS: dict[str, ExperimentPreset] = {
    p.name: p
    for p in [
        _p(
            "circle",
            "circle",
            {"radius": 1.0},
            FlowConfig(h=1e-5, N=256, max_time=1, record_every=50, snapshot_every=2500),
            [("circle_law", 1e-3), ("extinction_time_half", 0.01), ("circle_step_ratio", 1e-7)],
            "unit circle shrinking to a round point at t = 1/2",
        ),
        _p(
            "nfold2",
            "nfold_circle",
            {"radius": 1.0, "n": 2},
            FlowConfig(h=1e-4, N=512, max_time=1, record_every=10, snapshot_every=250),
            [("extinction_time_half", 0.01), ("initial_kappa_4pi", 1e-3)],
            "doubly covered unit circle; same extinction time as the simple circle",
        ),
        _p(
            "ellipse",
            "ellipse",
            {"a": 1.0, "b": 0.5},
            FlowConfig(h=1e-4, N=512, max_time=1, record_every=10, snapshot_every=250),
            [("area_rate", 0.02), ("extinct", 0.0)],
            "convex ellipse losing area at rate 2 pi",
        ),
        _p(
            "square",
            "square",
            {"side": 1.0},
            FlowConfig(h=1e-4, N=512, max_time=1, record_every=10, snapshot_every=100),
            [("initial_kappa_2pi", 1e-9), ("extinct", 0.0)],
            "unit square rounding off its corners",
        ),
        _p(
            "dcs",
            "dcs_smooth",
            {"length": 2.0},
            FlowConfig(h=1e-3, N=512, max_time=1, record_every=1, snapshot_every=1),
            [("dcs_quarter_bound", 1e-9 / 2.0), ("dcs_series", 1e-4), ("dcs_heated", 1e-4)],
            "doubly covered segment with a cosine parametrization",
        ),
        _p(
            "infinity_xy",
            "infinity_xy",
            {"scale": 1.0},
            _EIGHT_CFG,
            [
                ("zero_area", 1e-8),
                ("late_flatness", 0.2),
                ("dcs_limit", 0.05),
                ("eight_modes", 1e-8),
                ("symmetry_x_axis", 1e-12),
                ("symmetry_mirror_y", 1e-12),
            ],
            "figure eight with both axis symmetries; flattens to a segment-like point",
        ),
        _p(
            "infinity_y",
            "infinity_y",
            {},
            _EIGHT_CFG,
            [("symmetry_mirror_y", 1e-12)],
            "figure eight symmetric under reflection in the y-axis only",
        ),
        _p(
            "infinity_central",
            "infinity_central",
            {},
            _EIGHT_CFG,
            [("symmetry_central", 1e-12)],
            "figure eight with central symmetry only",
        ),
        _p(
            "infinity_perturbed",
            "infinity_perturbed",
            {},
            _EIGHT_CFG,
            [("extinct", 0.0), ("round_limit", 0.05)],
            "figure eight with a bump on one lobe; sheds a loop and rounds off",
        ),
        _p(
            "convoluted",
            "convoluted",
            {},
            FlowConfig(h=1e-5, N=1024, max_time=2, record_every=10, snapshot_every=5000),
            [
                ("two_events", 0.0),
                ("first_shedding", 0.5),
                ("second_shedding", 0.5),
            ],
            "Lissajous curve (3 cos 6 pi r, sin 16 pi r) shedding loops twice",
        ),
        _p(
            "lindiff",
            "two_circle_infinity",
            {"r_small": 0.25, "r_big": 0.75},
            FlowConfig(
                h=1e-4, N=512, max_time=0.5, record_every=10, snapshot_every=100, diffusivity_mode=FROZEN
            ),
            [("shedding_event", 0.0)],
            "two tangent circles under linear diffusion at frozen diffusivity",
        ),
    ]
}


def get_preset(name: str) -> ExperimentPreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def evaluate(traj: Trajectory, checks) -> dict[str, Check]:
    """Run each ``(name, tolerance)`` check against ``traj``."""
    return {name: CHECKS[name](traj, tol) for name, tol in checks}
