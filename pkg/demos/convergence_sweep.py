"""Halving the time step halves the error: a first-order self-convergence study.

Runs the command-line sweep on the circle preset and reads back the
length at t = 0.25 for each step size.
"""

import csv
import tempfile
from pathlib import Path

from csflow.cli import main

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "sweep"
    code = main(["sweep", "--preset", "circle", "--n", "128", "--grid", "h=4e-4,2e-4,1e-4,5e-5",
                 "--probe-time", "0.25", "--out", str(out)])
    with open(out / "sweep_summary.csv") as fh:
        rows = list(csv.DictReader(fh))

probe = [float(r["L_probe"]) for r in rows]
diffs = [abs(a - b) for a, b in zip(probe, probe[1:])]
print(f"sweep exit code {code}")
for r, L in zip(rows, probe):
    print(f"h={r['h']:>7}  L(0.25)={L:.10f}  t_end={float(r['t_end']):.5f}")
for a, b in zip(diffs, diffs[1:]):
    print(f"successive difference ratio: {a / b:.3f}")
