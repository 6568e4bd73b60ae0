"""Loop shedding also happens when the diffusivity is frozen.

With the length fixed at its initial value the step is plain linear heat
flow on the samples, yet the small lobe of a two-circle figure eight still
pinches off.
"""

from dataclasses import replace

from csflow import FlowConfig, ShapeSpec, generate, run

curve = generate(ShapeSpec("two_circle_infinity", {"r_small": 0.25, "r_big": 0.75}, 256))
base = FlowConfig(h=1e-4, N=256, max_time=0.1, record_every=20, snapshot_every=10**6)

for mode in ("length_coupled", "frozen"):
    traj = run(curve, replace(base, diffusivity_mode=mode))
    drops = ", ".join(f"{e.drop:.2f} at t~{e.t_hi:.3f}" for e in traj.events) or "none"
    print(f"{mode:>7} diffusivity: events {drops}")
