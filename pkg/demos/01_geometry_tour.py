#!/usr/bin/env python3
"""Tour of the geometry core: cable lengths, position solving, step
orders and coil trilateration, printed step by step.

Run:  python demos/01_geometry_tour.py
"""

import math

from cablebot import (
    AnchorSet,
    InterDistanceSet,
    Point3,
    WinchParams,
    cable_lengths_for_position,
    length_for_steps,
    solve_platform_position,
    steps_for_length,
    trilaterate_anchors,
    workspace_bounds,
    workspace_contains,
)

print("=== Rig: four coils on a 120 cm square, 150 cm up ===")
anchors = AnchorSet.from_coordinates(
    [(0, 0, 150), (120, 0, 150), (120, 120, 150), (0, 120, 150)])
for label, anchor in zip(anchors.labels(), anchors):
    print(f"  coil {label}: ({anchor.x:7.2f}, {anchor.y:7.2f}, {anchor.z:7.2f}) cm")

print("\n=== Inverse kinematics: position -> cable lengths ===")
platform = Point3(80.0, 45.0, 60.0)
lengths = cable_lengths_for_position(platform, anchors)
print(f"  platform at ({platform.x}, {platform.y}, {platform.z})")
for label, value in zip(anchors.labels(), lengths):
    print(f"  cable {label}: {value:8.3f} cm")

print("\n=== Forward kinematics: lengths -> position (least squares) ===")
solution = solve_platform_position(lengths, anchors)
p = solution.position
print(f"  solved ({p.x:.6f}, {p.y:.6f}, {p.z:.6f}), "
      f"residual {solution.residual:.2e} cm, "
      f"{solution.iterations} iterations")
print(f"  recovery error: {p.distance_to(platform):.2e} cm")

print("\n  a mirror pose above the coil plane fits the same lengths;")
print("  the solver prefers the hanging side unless hinted:")
hinted = solve_platform_position(lengths, anchors,
                                 hint=Point3(80.0, 45.0, 400.0))
print(f"  hinted solve lands at z = {hinted.position.z:.3f} "
      f"(coil plane is at z = 150)")

print("\n=== Step quantization: lengths -> motor orders ===")
params = WinchParams()
print(f"  drum radius {params.drum_radius_r:.4f} cm -> "
      f"one turn moves {params.circumference:.3f} cm of cable")
for target in (103.5, 107.0, 93.0):
    order = steps_for_length(target, 100.0, params)
    print(f"  100 cm -> {target} cm: {order.steps:+d} steps")
order = steps_for_length(lengths[0], params.home_length_l0, params)
reached = length_for_steps(order.steps, params)
print(f"  cable A to {lengths[0]:.3f} cm: {order.steps:+d} steps, "
      f"lands at {reached:.4f} cm "
      f"(quantization error {abs(reached - lengths[0]) * 10:.3f} mm)")

print("\n=== Trilateration: six tape-measure readings -> coil coordinates ===")
diag = 120.0 * math.sqrt(2)
distances = InterDistanceSet(d_ab=120.0, d_ac=diag, d_ad=120.0,
                             d_bc=120.0, d_bd=diag, d_cd=120.0,
                             plane_height=150.0)
result = trilaterate_anchors(distances)
for label, anchor in zip(result.anchors.labels(), result.anchors):
    print(f"  coil {label}: ({anchor.x:7.3f}, {anchor.y:7.3f}, {anchor.z:7.3f})")
print(f"  consistency residual: {result.residual:.2e} cm")

print("\n=== Workspace: the coil-delimited box ===")
lo, hi = workspace_bounds(anchors)
print(f"  x: [{lo[0]}, {hi[0]}]  y: [{lo[1]}, {hi[1]}]  z: [{lo[2]}, {hi[2]}]")
for point in (Point3(60, 60, 75), Point3(130, 60, 75), Point3(60, 60, 160)):
    inside = workspace_contains(point, anchors)
    print(f"  ({point.x}, {point.y}, {point.z}) inside: {inside}")
