"""The fourteen acceptance criteria, each at its stated tolerance.

Every test prints a single PASS/FAIL line before asserting, so the verdicts
are visible in ``pytest -v`` output even when an assertion fails.
"""

import math

import numpy as np

from csflow import cli
from csflow.diagnostics import (
    CircleLaw,
    circle_length,
    circle_recursion,
    compare_to_dcs_limit,
    dcs_first_step_length,
    isoperimetric_ratio,
)
from csflow.geometry import (
    ClosedPolyline,
    chord_total_curvature,
    recenter_rescale,
    turning_total_curvature,
)
from csflow.presets import PRESETS, area_rates, eight_projections, interior_snapshots, kappa_rises
from csflow.spectral import dft, heat_step, idft

from conftest import preset_run


def test_01_circle_law(verdict):
    traj, secs = preset_run("circle")
    L0 = traj.L0
    law = CircleLaw(L0)
    err = max(
        abs(r.length - circle_length(law, r.t)) / (2 * math.pi) for r in traj.records if r.t <= 0.45
    )
    t_end = traj.t_end
    ok = err < 1e-3 and 0.49 <= t_end <= 0.51 and secs < 60 and traj.reason == "extinction"
    verdict(
        "1 circle law",
        ok,
        f"max rel err {err:.2e} (<1e-3), termination t={t_end:.5f} ({traj.reason}), {secs:.1f}s",
    )
    assert abs(L0 - 2 * math.pi) < 1e-3
    assert ok


def test_02_circle_step_recursion(verdict):
    traj, _ = preset_run("circle")
    L = traj.step_lengths
    pred = np.array([circle_recursion(a, traj.h) for a in L[:-1]])
    worst = float(np.max(np.abs(L[1:] / pred - 1)))
    ok = worst < 1e-7
    verdict("2 per-step circle recursion", ok, f"{len(L) - 1} steps, worst rel {worst:.2e} (<1e-7)")
    assert ok


def test_03_doubly_covered_segment(verdict):
    traj, secs = preset_run("dcs")
    L0 = traj.L0
    L1 = float(traj.step_lengths[1])
    ref = dcs_first_step_length(L0, traj.h, 101)
    rel = abs(L1 - ref) / ref
    bound_ok = L1 <= 0.25 * L0 + 1e-9
    ok = bound_ok and rel < 1e-4 and secs < 5
    verdict(
        "3 doubly covered segment",
        ok,
        f"L1/L0={L1 / L0:.6f} (<=0.25), series/L0={ref / L0:.6f}, rel mismatch {rel:.3g} (<1e-4), {secs:.2f}s",
    )
    assert abs(L0 - 2.0) < 1e-12
    assert bound_ok, "first-step length exceeds L0/4"
    assert rel < 1e-4, "first-step length does not match the series"
    assert secs < 5


def test_04_square_totals(verdict):
    sq = ClosedPolyline([[0, 0], [1, 0], [1, 1], [0, 1]])
    turn = turning_total_curvature(sq)
    chord = chord_total_curvature(sq)
    ok = abs(turn - 2 * math.pi) < 1e-12 and abs(chord - 4 * math.sqrt(2)) < 1e-12
    verdict("4 square totals", ok, f"turning {turn!r}, chord {chord!r}")
    assert ok


def test_05_monotonicity_all_presets(verdict):
    worst_L, worst_k, worst_name = -math.inf, -math.inf, ""
    for name in PRESETS:
        traj, _ = preset_run(name)
        dL = float(np.max(np.diff(traj.column("length")), initial=-math.inf)) / traj.L0
        dk = float(np.max(kappa_rises(traj), initial=-math.inf))
        if dL > 1e-9 or dk > 1e-3:
            worst_name = name
        worst_L, worst_k = max(worst_L, dL), max(worst_k, dk)
    ok = worst_L <= 1e-9 and worst_k <= 1e-3
    verdict(
        "5 monotonicity",
        ok,
        f"{len(PRESETS)} presets; max length rise/L0 {worst_L:.2e}, max kappa rise {worst_k:.2e} rad"
        + (f", offender {worst_name}" if worst_name else ""),
    )
    assert ok


def test_06_nfold_circle(verdict):
    traj, _ = preset_run("nfold2")
    k0 = traj.records[0].kappa_tot
    ok = (
        traj.reason == "extinction"
        and 0.49 <= traj.t_end <= 0.51
        and abs(k0 - 4 * math.pi) < 1e-3
    )
    verdict("6 n-fold circle", ok, f"L0={traj.L0:.6f}, termination t={traj.t_end:.5f}, kappa0={k0:.6f}")
    assert abs(traj.L0 - 4 * math.pi) < 1e-2
    assert ok


def test_07_symmetric_infinity(verdict):
    traj, _ = preset_run("infinity_xy")
    L0 = traj.L0
    area = float(np.max(np.abs(traj.column("area")))) / L0**2
    # aspect ratio in the direction that tends to zero: y-extent over x-extent
    late = [1.0 / r.aspect for r in traj.records if r.t >= 0.9 * traj.t_end]
    dist = compare_to_dcs_limit(recenter_rescale(traj.snapshots[-1][2]))
    ok_area, ok_aspect, ok_limit = area < 1e-8, max(late) < 0.2, dist < 0.05
    verdict(
        "7 symmetric infinity",
        ok_area and ok_aspect and ok_limit,
        f"|A|/L0^2 {area:.1e} (<1e-8), late diam_y/diam_x max {max(late):.3f} (<0.2) "
        f"over {len(late)} records (diam_x/diam_y min {1 / max(late):.2f}), "
        f"rescaled dcs distance {dist:.2e} (<0.05)",
    )
    assert ok_area
    assert ok_limit
    assert ok_aspect, "figure eight not flat enough in the last tenth of its lifetime"


def test_08_mode_projections(verdict):
    traj, _ = preset_run("infinity_xy")
    snaps = interior_snapshots(traj, 3)
    forbidden, positive = 0.0, True
    times = []
    for _, t, P in snaps:
        pr = eight_projections(P)
        forbidden = max(forbidden, abs(pr["x_sin1"]), abs(pr["y_cos1"]), abs(pr["y_sin1"]))
        positive &= pr["y_sin2"] > 0
        times.append(t)
    ok = forbidden < 1e-8 and positive and times[0] == 0.0 and all(0 < t < traj.t_end for t in times[1:])
    verdict("8 mode projections", ok, f"times {np.round(times, 4).tolist()}, max forbidden {forbidden:.1e}")
    assert ok


def test_09_convoluted(verdict):
    traj, secs = preset_run("convoluted")
    ev = traj.events
    desc = ", ".join(f"[{e.t_lo:.4f},{e.t_hi:.4f}] drop {e.drop:.3f} cusps {e.cusp_estimate}" for e in ev)
    windows = [(0.25, 0.32, 4 * math.pi, 4), (0.50, 0.58, 2 * math.pi, 2)]
    ok = len(ev) == 2 and secs < 600
    timing_ok = ok
    if len(ev) == 2:
        for e, (lo, hi, drop, cusps) in zip(ev, windows):
            timing_ok &= e.t_lo <= hi and lo <= e.t_hi
            ok &= e.t_lo <= hi and lo <= e.t_hi and e.cusp_estimate == cusps and abs(e.drop - drop) <= 0.5
    verdict("9 convoluted curve", ok, f"{len(ev)} events: {desc}; {secs:.0f}s")
    assert len(ev) == 2
    assert timing_ok, "event windows outside the expected time ranges"
    assert ok, "event drops/cusp estimates differ from 4 pi / 2 pi and 4 / 2"


def test_10_perturbed_infinity(verdict):
    traj, _ = preset_run("infinity_perturbed")
    q = isoperimetric_ratio(traj.snapshots[-1][2])
    assert traj.snapshots[-1][0] == traj.final.k
    ok = traj.reason == "extinction" and q < 1.05
    verdict("10 perturbed infinity", ok, f"{traj.reason} at t={traj.t_end:.4f}, isoperimetric {q:.5f}")
    assert ok


def test_11_linear_diffusion(verdict):
    traj, _ = preset_run("lindiff")
    p = PRESETS["lindiff"]
    drops = [e.drop for e in traj.events]
    ok = p.config.diffusivity_mode == "frozen" and any(d >= math.pi / 2 for d in drops)
    verdict("11 linear diffusion", ok, f"event drops {np.round(drops, 3).tolist()}")
    assert ok


def test_12_self_convergence(verdict, tmp_path):
    out = tmp_path / "sweep"
    code = cli.main(
        ["sweep", "--preset", "circle", "--grid", "h=4e-4,2e-4,1e-4", "--probe-time", "0.25", "--out", str(out)]
    )
    assert code == 0
    rows = np.genfromtxt(out / "sweep_summary.csv", delimiter=",", names=True, dtype=None, encoding="utf-8")
    L = rows["L_probe"].astype(float)
    d = np.abs(np.diff(L))
    ratio = d[0] / d[1]
    ok = 1.5 <= ratio <= 2.5
    verdict("12 self-convergence", ok, f"|dL| {d[0]:.3e} -> {d[1]:.3e}, ratio {ratio:.3f} in [1.5, 2.5]")
    assert ok


def test_13_spectral_suite(verdict):
    rng = np.random.default_rng(13)
    x = rng.normal(size=(256, 2))
    roundtrip = float(np.max(np.abs(idft(dft(x)).real - x)))
    c = dft(x)
    parseval = abs(np.sum(np.abs(c) ** 2) - np.mean(np.sum(x**2, axis=1))) / np.mean(np.sum(x**2, axis=1))
    a = heat_step(heat_step(x, 1e-3, 2.0), 2e-3, 2.0).points
    b = heat_step(x, 3e-3, 2.0).points
    semigroup = float(np.max(np.abs(a - b)))
    th = 0.7
    R = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    shift = np.array([3.0, -2.0])
    lhs = heat_step(x @ R.T + shift, 1e-3, 2.0).points
    rhs = heat_step(x, 1e-3, 2.0).points @ R.T + shift
    equiv = float(np.max(np.abs(lhs - rhs)))
    ok = roundtrip < 1e-12 and parseval < 1e-10 and semigroup < 1e-10 and equiv < 1e-12
    verdict(
        "13 spectral suite",
        ok,
        f"round trip {roundtrip:.1e}, Parseval {parseval:.1e}, semigroup {semigroup:.1e}, equivariance {equiv:.1e}",
    )
    assert ok


def test_14_area_rate(verdict):
    traj, _ = preset_run("ellipse")
    spec = PRESETS["ellipse"].shape
    assert spec.resolved()["a"] == 1.0 and spec.resolved()["b"] == 0.5
    rates = area_rates(traj)
    dev = float(np.max(np.abs(rates / (-2 * math.pi) - 1)))
    ok = len(rates) > 10 and dev < 0.02
    verdict(
        "14 area rate",
        ok,
        f"{len(rates)} central differences, mean {rates.mean():.4f} vs {-2 * math.pi:.4f}, worst rel {dev:.2e}",
    )
    assert ok
