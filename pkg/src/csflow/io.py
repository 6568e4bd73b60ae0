"""Reading and writing run directories.

A run directory holds ``trajectory.csv``, ``events.csv``, ``step_lengths.csv``,
``run.json`` and one ``snapshot_<k>.csv`` (optionally ``.svg``) per stored
polyline, where ``k`` is the step index zero-padded to eight digits.
"""

from __future__ import annotations

import csv
import json
import re
from pathlib import Path

import numpy as np

from .flow import Record, SingularEvent, Trajectory
from .geometry import ClosedPolyline, recenter_rescale

__all__ = [
    "EVENT_HEADER",
    "TRAJECTORY_HEADER",
    "load_run",
    "read_snapshot",
    "snapshot_svg",
    "write_run",
    "write_snapshot",
]

TRAJECTORY_HEADER = ("t", "length", "kappa_tot", "area", "aspect", "extremity")
EVENT_HEADER = ("t_lo", "t_hi", "drop", "cusps")
_SNAP = re.compile(r"snapshot_(\d{8})\.csv$")


def _f(x: float) -> str:
    return format(float(x), ".17g")


def write_snapshot(path: Path, P) -> None:
    x = np.asarray(P, dtype=float)
    with open(path, "w", newline="") as fh:
        for row in x:
            fh.write(",".join(_f(v) for v in row) + "\n")


def read_snapshot(path: Path) -> ClosedPolyline:
    return ClosedPolyline(np.loadtxt(path, delimiter=",", ndmin=2), merge_tol=None)


def snapshot_svg(curves, size: int = 400, margin: float = 0.05) -> str:
    """Standalone SVG with one closed ``<path>`` per curve (planar, y pointing up)."""
    arrs = [np.asarray(c, dtype=float)[:, :2] for c in curves]
    if not arrs:
        raise ValueError("need at least one curve")
    allpts = np.vstack(arrs)
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = max(float(np.max(hi - lo)), 1e-300)
    pad = margin * span
    x0, y1 = lo[0] - pad, hi[1] + pad
    w, h = hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{max(1, round(size * h / w))}" viewBox="{_f(x0)} {_f(-y1)} {_f(w)} {_f(h)}">',
    ]
    stroke = _f(span / 400)
    for a in arrs:
        d = "M " + " L ".join(f"{_f(p[0])},{_f(-p[1])}" for p in a) + " Z"
        lines.append(f'<path d="{d}" fill="none" stroke="black" stroke-width="{stroke}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_run(
    out: Path,
    traj: Trajectory,
    meta: dict,
    *,
    svg: bool = False,
    rescaled: bool = False,
) -> None:
    """Write every artefact of ``traj`` into directory ``out`` (created if needed)."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "trajectory.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRAJECTORY_HEADER)
        for r in traj.records:
            w.writerow([_f(r.t), _f(r.length), _f(r.kappa_tot), _f(r.area), _f(r.aspect), r.extremity])
    with open(out / "events.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(EVENT_HEADER)
        for e in traj.events:
            w.writerow([_f(e.t_lo), _f(e.t_hi), _f(e.drop), e.cusp_estimate])
    np.savetxt(out / "step_lengths.csv", traj.step_lengths, fmt="%.17g")
    for k, _, curve in traj.snapshots:
        write_snapshot(out / f"snapshot_{k:08d}.csv", curve)
        if svg:
            c = recenter_rescale(curve) if rescaled else curve
            (out / f"snapshot_{k:08d}.svg").write_text(snapshot_svg([c]))
    info = dict(meta)
    info.update(reason=traj.reason, t_end=traj.t_end, L0=traj.L0, h=traj.h)
    (out / "run.json").write_text(json.dumps(info, indent=2, sort_keys=True) + "\n")


def load_run(out: Path) -> tuple[Trajectory, dict]:
    """Rebuild a :class:`Trajectory` (records, events, snapshots) from a run directory.

    Raises
    ------
    FileNotFoundError
        If ``run.json`` or ``trajectory.csv`` is missing.
    """
    out = Path(out)
    meta = json.loads((out / "run.json").read_text())
    h = float(meta["h"])
    traj = Trajectory(h=h, L0=float(meta["L0"]), reason=meta["reason"], t_end=float(meta["t_end"]))
    with open(out / "trajectory.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        t = float(row["t"])
        traj.records.append(
            Record(
                round(t / h),
                t,
                float(row["length"]),
                float(row["kappa_tot"]),
                float(row["area"]),
                float(row["aspect"]),
                int(row["extremity"]),
            )
        )
    ev = out / "events.csv"
    if ev.exists():
        with open(ev, newline="") as fh:
            for row in csv.DictReader(fh):
                traj.events.append(
                    SingularEvent(
                        float(row["t_lo"]), float(row["t_hi"]), float(row["drop"]), int(row["cusps"])
                    )
                )
    sl = out / "step_lengths.csv"
    if sl.exists():
        traj.step_lengths = np.atleast_1d(np.loadtxt(sl))
    for path in sorted(out.iterdir()):
        m = _SNAP.match(path.name)
        if m:
            k = int(m.group(1))
            traj.snapshots.append((k, k * h, read_snapshot(path)))
    return traj, meta
