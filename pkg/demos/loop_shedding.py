"""A curve with many small loops sheds them in bursts.

Each loop that contracts to a point removes a chunk of total curvature all
at once; those drops are reported as singular events.
"""

from csflow import FlowConfig, ShapeSpec, generate, run

curve = generate(ShapeSpec("convoluted", {}, 512))
traj = run(curve, FlowConfig(h=4e-5, N=512, max_time=2.0, record_every=25, snapshot_every=10**6))

print(f"stopped by {traj.reason} at t={traj.t_end:.4f}")
print(f"total curvature went from {traj.records[0].kappa_tot:.3f} to {traj.final.kappa_tot:.3f}")
for e in traj.events:
    print(f"event in [{e.t_lo:.4f}, {e.t_hi:.4f}]: kappa_tot dropped by {e.drop:.3f} (about {e.cusp_estimate} x pi)")
