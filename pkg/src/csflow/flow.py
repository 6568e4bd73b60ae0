"""Semi-discrete curve shortening flow.

Each step resamples the current polyline to ``N`` points at uniform
arclength and then runs the linear heat equation ``X_t = X_ss / L^2`` for a
time ``h`` exactly in Fourier space. ``L`` is re-read every step
(length-coupled mode) or held at the initial length (frozen mode, which is
plain linear diffusion interleaved with resampling).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

import numpy as np

from .geometry import (
    ClosedPolyline,
    DegenerateCurveError,
    _resample,
    aspect_ratio,
    extremity_count,
    polygon_length,
    signed_area,
    turning_total_curvature,
)
from .spectral import _heat

__all__ = [
    "CollapseError",
    "FlowConfig",
    "FlowState",
    "Record",
    "SingularEvent",
    "Trajectory",
    "detect_events",
    "initial_state",
    "run",
    "self_convergence",
    "step",
]

log = logging.getLogger(__name__)

LENGTH_COUPLED = "length_coupled"
FROZEN = "frozen"


class CollapseError(RuntimeError):
    """The evolving polyline has shrunk onto a single point.

    ``state`` holds the collapsed state when it is available.
    """

    def __init__(self, message: str, state: "FlowState | None" = None):
        super().__init__(message)
        self.state = state


@dataclass(frozen=True)
class FlowConfig:
    h: float = 1e-4
    N: int = 512
    max_time: float = 10.0
    extinction_frac: float = 1e-3
    record_every: int = 10
    diffusivity_mode: str = LENGTH_COUPLED
    event_drop_threshold: float = math.pi / 2
    # steps between stored polylines; None stores one at every record
    snapshot_every: int | None = None

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"h must be positive, got {self.h}")
        if self.N < 8 or self.N % 2:
            raise ValueError(f"N must be even and at least 8, got {self.N}")
        if not 0 < self.extinction_frac < 1:
            raise ValueError("extinction_frac must lie in (0, 1)")
        if self.max_time < 0:
            raise ValueError("max_time must be non-negative")
        if self.record_every < 1:
            raise ValueError("record_every must be at least 1")
        if self.diffusivity_mode not in (LENGTH_COUPLED, FROZEN):
            raise ValueError(f"unknown diffusivity_mode {self.diffusivity_mode!r}")
        if not self.event_drop_threshold > 0:
            raise ValueError("event_drop_threshold must be positive")
        if self.snapshot_every is not None and self.snapshot_every < 1:
            raise ValueError("snapshot_every must be at least 1")


@dataclass(frozen=True)
class FlowState:
    """Polyline at time ``t = k h``; ``L0`` is the initial length of the run."""

    curve: ClosedPolyline
    t: float
    k: int
    L: float
    L0: float


class Record(NamedTuple):
    k: int
    t: float
    length: float
    kappa_tot: float
    area: float
    aspect: float
    extremity: int


class SingularEvent(NamedTuple):
    t_lo: float
    t_hi: float
    drop: float
    cusp_estimate: int


@dataclass
class Trajectory:
    records: list[Record] = field(default_factory=list)
    snapshots: list[tuple[int, float, ClosedPolyline]] = field(default_factory=list)
    events: list[SingularEvent] = field(default_factory=list)
    reason: str = ""
    step_lengths: np.ndarray = field(default_factory=lambda: np.empty(0))
    h: float = float("nan")
    L0: float = float("nan")
    # time of the terminating step (may lie past the last record after a collapse)
    t_end: float = 0.0

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    @property
    def final(self) -> Record:
        return self.records[-1]

    def in_event(self, t_lo: float, t_hi: float) -> bool:
        """Whether the record interval [t_lo, t_hi] overlaps a detected event window."""
        return any(e.t_lo <= t_hi and t_lo <= e.t_hi for e in self.events)


def initial_state(curve: ClosedPolyline) -> FlowState:
    L = polygon_length(curve)
    return FlowState(curve=curve, t=0.0, k=0, L=L, L0=L)


def step(state: FlowState, cfg: FlowConfig) -> FlowState:
    """Advance one time step: resample to ``cfg.N`` points, then diffuse for ``cfg.h``."""
    if not state.L > 0:
        raise CollapseError("cannot step a curve of zero length")
    x = _resample(state.curve.points, cfg.N)
    L_diff = state.L if cfg.diffusivity_mode == LENGTH_COUPLED else state.L0
    y = _heat(x, cfg.h, L_diff)
    k = state.k + 1
    new = FlowState(
        curve=ClosedPolyline(y, merge_tol=None),
        t=k * cfg.h,
        k=k,
        L=polygon_length(y),
        L0=state.L0,
    )
    spread = np.max(np.linalg.norm(y - y.mean(axis=0), axis=1))
    if spread <= 1e-14 * state.L0:
        raise CollapseError(f"curve collapsed to a point at step {k}", new)
    return new


def _record(state: FlowState) -> Record:
    x = state.curve.points
    try:
        kappa = turning_total_curvature(x)
    except DegenerateCurveError:
        kappa = float("nan")
    if x.shape[1] == 2:
        area = signed_area(x)
        try:
            aspect = aspect_ratio(x)
        except DegenerateCurveError:
            aspect = float("inf")
    else:
        area = aspect = float("nan")
    return Record(state.k, state.t, state.L, kappa, area, aspect, extremity_count(x))


def run(initial: ClosedPolyline, cfg: FlowConfig) -> Trajectory:
    """Iterate :func:`step` until ``max_time``, extinction, or collapse.

    The first and last valid states are always recorded. A step that maps
    the curve onto a point counts as extinction when its length is below the
    threshold; that step's length is kept in ``step_lengths`` but not
    recorded. Polylines are stored every ``snapshot_every`` steps and on both sides of any record interval
    whose total-curvature drop exceeds the event threshold.
    """
    state = initial_state(initial)
    L0 = state.L
    snap_every = cfg.snapshot_every or cfg.record_every
    n_steps = math.ceil(cfg.max_time / cfg.h - 1e-9)
    traj = Trajectory(h=cfg.h, L0=L0)
    lengths = [L0]
    snaps: dict[int, tuple[int, float, ClosedPolyline]] = {0: (0, 0.0, state.curve)}

    prev = state
    traj.records.append(_record(state))
    reason = "max_time"
    while state.k < n_steps:
        try:
            state = step(state, cfg)
        except CollapseError as exc:
            log.info("%s", exc)
            reason = "collapse"
            gone = exc.state
            if gone is not None and gone.L < cfg.extinction_frac * L0:
                # a step that lands on a point has passed the extinction threshold;
                # the last valid state stays the final record
                reason = "extinction"
                lengths.append(gone.L)
                traj.t_end = gone.t
            break
        lengths.append(state.L)
        extinct = state.L < cfg.extinction_frac * L0
        if state.k % cfg.record_every == 0 or extinct or state.k == n_steps:
            rec = _record(state)
            if traj.records[-1].kappa_tot - rec.kappa_tot > cfg.event_drop_threshold:
                snaps.setdefault(prev.k, (prev.k, prev.t, prev.curve))
                snaps.setdefault(state.k, (state.k, state.t, state.curve))
            traj.records.append(rec)
            prev = state
            if state.k % snap_every == 0:
                snaps.setdefault(state.k, (state.k, state.t, state.curve))
        if extinct:
            reason = "extinction"
            break

    if traj.records[-1].k != state.k:
        traj.records.append(_record(state))
    snaps.setdefault(state.k, (state.k, state.t, state.curve))
    traj.snapshots = [snaps[k] for k in sorted(snaps)]
    traj.step_lengths = np.asarray(lengths)
    traj.reason = reason
    traj.t_end = max(traj.t_end, state.t)
    if len(traj.records) >= 2:
        traj.events = detect_events(
            [(r.t, r.kappa_tot) for r in traj.records], cfg.event_drop_threshold
        )
    return traj


def detect_events(series: Sequence[tuple[float, float]], threshold: float) -> list[SingularEvent]:
    """Group consecutive total-curvature drops larger than ``threshold``.

    ``series`` holds ``(t, kappa_tot)`` pairs in time order. Contiguous
    above-threshold drops merge into one window; ``drop`` is the total
    decrease across the window and ``cusp_estimate = round(drop / pi)``.
    """
    if len(series) < 2:
        raise ValueError("need at least two records")
    events = []
    start = None
    for i in range(len(series) - 1):
        big = series[i][1] - series[i + 1][1] > threshold
        if big and start is None:
            start = i
        if start is not None and (not big or i == len(series) - 2):
            end = i + 1 if big else i
            drop = series[start][1] - series[end][1]
            events.append(
                SingularEvent(series[start][0], series[end][0], drop, int(round(drop / math.pi)))
            )
            start = None
    return events


def self_convergence(initial: ClosedPolyline, cfg: FlowConfig, t_probe: float) -> float:
    """Relative length discrepancy at ``t_probe`` between steps ``h`` and ``h/2``."""
    L0 = polygon_length(initial)
    out = []
    for h in (cfg.h, cfg.h / 2):
        c = replace(cfg, h=h, max_time=t_probe, record_every=10**9, snapshot_every=10**9)
        traj = run(initial, c)
        k = round(t_probe / h)
        if len(traj.step_lengths) <= k:
            raise RuntimeError(f"run with h={h} stopped ({traj.reason}) before t={t_probe}")
        out.append(traj.step_lengths[k])
    return abs(out[0] - out[1]) / L0
