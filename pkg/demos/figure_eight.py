"""A symmetric figure eight keeps zero area and flattens as it shrinks.

Both lobes carry equal and opposite area, so the enclosed signed area stays
zero while the curve collapses onto a horizontal segment traversed twice.
"""

from csflow import FlowConfig, ShapeSpec, compare_to_dcs_limit, generate, recenter_rescale, run, verify_symmetry

eight = generate(ShapeSpec("infinity_xy", {}, 256))
traj = run(eight, FlowConfig(h=1e-4, N=256, max_time=1.0, record_every=100, snapshot_every=200))

print(f"stopped by {traj.reason} at t={traj.t_end:.4f}")
print(f"{'t':>7} {'length':>9} {'area':>10} {'height/width':>13}")
for r in traj.records[::3]:
    print(f"{r.t:7.3f} {r.length:9.5f} {r.area:10.2e} {1 / r.aspect:13.4f}")

last = traj.snapshots[-1][2]
print(f"distance of the rescaled final curve to a doubled segment: {compare_to_dcs_limit(recenter_rescale(last)):.2e}")
print(f"x-axis symmetry defect of the final curve: {verify_symmetry(last, 'x_axis'):.1e}")
