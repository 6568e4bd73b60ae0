"""Command-line experiment runner: ``csflow run | analyze | sweep``.

Exit codes: 0 success, 1 numerical failure, 2 usage error, 3 check failure.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, replace
from pathlib import Path

from .flow import FROZEN, FlowConfig, Trajectory, run
from .io import load_run, write_run
from .presets import _MONO, CHECKS, Check, get_preset
from .shapes import ShapeSpec, generate

log = logging.getLogger("csflow")

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE, EXIT_CHECK = 0, 1, 2, 3

# keys accepted in a --config file, mapped to argparse destinations
_CONFIG_KEYS = {
    "preset": str,
    "shape": str,
    "h": float,
    "n": int,
    "tmax": float,
    "out": str,
    "record_every": int,
    "snapshot_every": int,
    "frozen_diffusivity": bool,
    "svg": bool,
    "rescaled": bool,
}
_GRID_KEYS = {"h": float, "n": int, "tmax": float, "record_every": int, "snapshot_every": int}


class UsageError(Exception):
    pass


def default_out() -> Path:
    return Path(os.environ.get("CSFLOW_OUT", "csflow-out"))


def _parse_bool(v: str) -> bool:
    low = v.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {v!r}")


def _parse_kv(item: str) -> tuple[str, str]:
    key, sep, val = item.partition("=")
    if not sep or not key.strip():
        raise UsageError(f"expected key=value, got {item!r}")
    return key.strip(), val.strip()


def read_config(path: Path) -> dict:
    """Parse a ``key = value`` file; ``param.NAME = v`` sets a shape parameter."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    conf: dict = {"param": {}}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, val = _parse_kv(line)
        key = key.replace("-", "_")
        if key.startswith("param."):
            conf["param"][key[6:]] = val
        elif key in _CONFIG_KEYS:
            typ = _CONFIG_KEYS[key]
            try:
                conf[key] = _parse_bool(val) if typ is bool else typ(val)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}") from None
        else:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
    return conf


def _merge_config(args: argparse.Namespace) -> None:
    # flags win over the file
    conf = read_config(args.config) if args.config else {"param": {}}
    for key, val in conf.items():
        if key == "param":
            continue
        if getattr(args, key, None) in (None, False):
            setattr(args, key, val)
    params = dict(conf["param"])
    for item in args.param or []:
        k, v = _parse_kv(item)
        params[k] = v
    try:
        args.params = {k: float(v) for k, v in params.items()}
    except ValueError as exc:
        raise UsageError(f"shape parameters must be numeric: {exc}") from None


def build_experiment(args: argparse.Namespace) -> tuple[ShapeSpec, FlowConfig, dict]:
    """Resolve preset, shape and flag overrides into a shape, a config and run metadata."""
    if args.seedless:
        raise UsageError("--seedless is reserved: the flow has no randomness to seed")
    _merge_config(args)
    if bool(args.preset) == bool(args.shape):
        raise UsageError("give exactly one of --preset or --shape")
    try:
        if args.preset:
            p = get_preset(args.preset)
            shape = ShapeSpec(p.shape.kind, {**p.shape.params, **args.params}, p.shape.samples)
            cfg, checks = p.config, p.checks
        else:
            shape = ShapeSpec(args.shape, args.params)
            cfg, checks = FlowConfig(snapshot_every=100), _MONO
        over = {}
        if args.h is not None:
            over["h"] = args.h
        if args.n is not None:
            over["N"] = args.n
            shape = replace(shape, samples=args.n)
        if args.tmax is not None:
            over["max_time"] = args.tmax
        if args.record_every is not None:
            over["record_every"] = args.record_every
        if args.snapshot_every is not None:
            over["snapshot_every"] = args.snapshot_every
        if args.frozen_diffusivity:
            over["diffusivity_mode"] = FROZEN
        cfg = replace(cfg, **over)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    meta = {
        "preset": args.preset,
        "shape": {"kind": shape.kind, "params": shape.resolved(), "samples": shape.samples},
        "config": asdict(cfg),
        "checks": [list(c) for c in checks],
    }
    return shape, cfg, meta


def _summary(traj: Trajectory) -> str:
    f = traj.final
    return f"{traj.reason} t={traj.t_end:.6g} L={f.length:.6g} events={len(traj.events)}"


def _out_dir(args) -> Path:
    return Path(args.out) if args.out else default_out()


def _execute(shape: ShapeSpec, cfg: FlowConfig) -> Trajectory:
    try:
        initial = generate(shape)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return run(initial, cfg)


def cmd_run(args) -> int:
    shape, cfg, meta = build_experiment(args)
    traj = _execute(shape, cfg)
    out = _out_dir(args)
    write_run(out, traj, meta, svg=args.svg, rescaled=args.rescaled)
    print(_summary(traj))
    if traj.reason == "collapse" and len(traj.records) < 2:
        log.error("curve collapsed before the first record")
        return EXIT_NUMERIC
    return EXIT_OK


def evaluate_checks(traj: Trajectory, checks) -> dict[str, Check]:
    report = {}
    for name, tol in checks:
        try:
            report[name] = CHECKS[name](traj, tol)
        except (ValueError, IndexError) as exc:
            log.warning("check %s could not be evaluated: %s", name, exc)
            report[name] = Check(math.nan, math.nan, tol, False)
    return report


def cmd_analyze(args) -> int:
    if args.preset or args.shape:
        shape, cfg, meta = build_experiment(args)
        traj = _execute(shape, cfg)
        out = _out_dir(args)
        write_run(out, traj, meta)
    else:
        if args.seedless:
            raise UsageError("--seedless is reserved: the flow has no randomness to seed")
        out = _out_dir(args)
        if not (out / "run.json").is_file():
            raise UsageError(f"{out} does not contain a run (no run.json)")
        traj, meta = load_run(out)
    checks = [tuple(c) for c in meta.get("checks") or _MONO]
    unknown = [c for c, _ in checks if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown checks in {out / 'run.json'}: {unknown}")
    report = evaluate_checks(traj, checks)
    (out / "report.json").write_text(
        json.dumps({k: c.as_dict() for k, c in report.items()}, indent=2) + "\n"
    )
    for name, c in report.items():
        print(f"{'PASS' if c.passed else 'FAIL'} {name} value={c.value:.6g} tol={c.tolerance:.3g}")
    return EXIT_OK if all(c.passed for c in report.values()) else EXIT_CHECK


def parse_grid(items) -> dict[str, list]:
    grid = {}
    for item in items or []:
        key, vals = _parse_kv(item)
        key = key.replace("-", "_")
        if key.startswith("param."):
            typ = float
        elif key in _GRID_KEYS:
            typ = _GRID_KEYS[key]
        else:
            raise UsageError(f"cannot sweep {key!r}; use one of {sorted(_GRID_KEYS)} or param.NAME")
        try:
            values = [typ(v) for v in vals.split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"bad grid values for {key}: {vals!r}") from None
        if not values:
            raise UsageError(f"grid for {key} is empty")
        grid[key] = values
    if not grid:
        raise UsageError("sweep needs at least one --grid key=v1,v2,...")
    return grid


def _sweep_point(job) -> dict:
    shape, cfg, meta, out, probe = job
    row = {"status": "ok", "reason": "", "t_end": math.nan, "L_final": math.nan, "L_probe": math.nan, "events": 0}
    try:
        traj = run(generate(shape), cfg)
        write_run(out, traj, meta)
    except Exception as exc:  # recorded per point
        row["status"] = f"error: {exc}"
        return row
    row.update(reason=traj.reason, t_end=traj.t_end, L_final=traj.final.length, events=len(traj.events))
    if probe is not None:
        k = round(probe / cfg.h)
        if k < len(traj.step_lengths):
            row["L_probe"] = float(traj.step_lengths[k])
    return row


def cmd_sweep(args) -> int:
    grid = parse_grid(args.grid)
    shape0, cfg0, meta0 = build_experiment(args)
    out = _out_dir(args)
    keys = list(grid)
    points = list(itertools.product(*(grid[k] for k in keys)))
    jobs = []
    for i, values in enumerate(points):
        shape, over = shape0, {}
        params = dict(shape0.params)
        for key, v in zip(keys, values):
            if key.startswith("param."):
                params[key[6:]] = v
            elif key == "n":
                over["N"] = v
                shape = replace(shape, samples=v)
            elif key == "tmax":
                over["max_time"] = v
            else:
                over[key] = v
        try:
            shape = replace(shape, params=params)
            cfg = replace(cfg0, **over)
        except ValueError as exc:
            raise UsageError(f"grid point {dict(zip(keys, values))}: {exc}") from None
        meta = dict(meta0, shape={"kind": shape.kind, "params": shape.resolved(), "samples": shape.samples})
        meta["config"] = asdict(cfg)
        jobs.append((shape, cfg, meta, out / f"point_{i:03d}", args.probe_time))

    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as ex:
            rows = list(ex.map(_sweep_point, jobs))
    else:
        rows = [_sweep_point(j) for j in jobs]

    out.mkdir(parents=True, exist_ok=True)
    fields = ["point", *keys, "status", "reason", "t_end", "L_final", "L_probe", "events"]
    with open(out / "sweep_summary.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fields)
        for i, (values, row) in enumerate(zip(points, rows)):
            nums = [format(row[k], ".17g") for k in ("t_end", "L_final", "L_probe")]
            w.writerow([i, *values, row["status"], row["reason"], *nums, row["events"]])
    failed = sum(r["status"] != "ok" for r in rows)
    print(f"{len(rows)} points, {failed} failed -> {out / 'sweep_summary.csv'}")
    return EXIT_OK if failed == 0 else EXIT_NUMERIC


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", help="named experiment")
    p.add_argument("--shape", help="shape kind for an ad-hoc run")
    p.add_argument("--param", action="append", metavar="K=V", help="shape parameter (repeatable)")
    p.add_argument("--h", type=float, help="time step")
    p.add_argument("--n", type=int, help="number of resampling points")
    p.add_argument("--tmax", type=float, help="maximum simulated time")
    p.add_argument("--out", help="output directory (default: $CSFLOW_OUT or ./csflow-out)")
    p.add_argument("--record-every", type=int, help="steps between records")
    p.add_argument("--snapshot-every", type=int, help="steps between stored polylines")
    p.add_argument("--frozen-diffusivity", action="store_true", help="diffuse at 1/L0^2 throughout")
    p.add_argument("--config", help="key=value file; flags override it")
    p.add_argument("--seedless", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csflow", description="Semi-discrete curve shortening flow")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the flow and write CSV/SVG output")
    _common(p)
    p.add_argument("--svg", action="store_true", help="also write SVG snapshots")
    p.add_argument("--rescaled", action="store_true", help="recenter and rescale SVG snapshots")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("analyze", help="evaluate a preset's checks and write report.json")
    _common(p)
    p.set_defaults(func=cmd_analyze, svg=False, rescaled=False)

    p = sub.add_parser("sweep", help="run a preset over a parameter grid")
    _common(p)
    p.add_argument("--grid", action="append", metavar="K=V1,V2", help="swept values (repeatable)")
    p.add_argument("--probe-time", type=float, help="also report the length at this time")
    p.add_argument("--workers", type=int, default=1, help="parallel processes")
    p.set_defaults(func=cmd_sweep, svg=False, rescaled=False)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"csflow: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"csflow: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
