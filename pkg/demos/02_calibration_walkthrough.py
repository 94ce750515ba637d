#!/usr/bin/env python3
"""Calibration walkthrough on the simulated winches: jog each cable to
its 100 cm mark, save the zeros, watch the status colors turn green,
then make the first Cartesian move.

Run:  python demos/02_calibration_walkthrough.py
"""

from cablebot import COIL_IDS, Point3, WinchParams
from cablebot.config import default_config
from cablebot.controller import CableRobotController
from cablebot.winchsim import UNWIND, FaultKind, SimClock, WinchSimulator

clock = SimClock.manual()  # deterministic: time moves when we say so
sim = WinchSimulator(WinchParams(), clock=clock)
controller = CableRobotController(sim, default_config().to_robot_config())


def show_status(note):
    status = controller.status()
    chips = "  ".join(f"{coil}:{state.color}"
                      for coil, state in status.coil_states.items())
    p = status.position.position
    print(f"  {note}")
    print(f"    coils   {chips}")
    print(f"    lengths " + "  ".join(f"{v:7.2f}" for v in status.lengths))
    print(f"    pose    ({p.x:.2f}, {p.y:.2f}, {p.z:.2f})"
          f"{'' if status.position.converged else '  [not converged]'}")


print("=== Fresh robot: nothing is zeroed yet (orange) ===")
show_status("power on")

print("\n=== Zero each coil: jog to the 100 cm mark, stop, save ===")
for coil in COIL_IDS:
    controller.calibration_start_jog(coil, UNWIND, speed=50.0)
    clock.advance(1.0)  # operator eyeballs the mark for a second
    accrued = controller.calibration_stop(coil)
    controller.calibration_save_zero(coil)
    print(f"  coil {coil}: jogged {accrued:+d} steps, zero saved")
show_status("all four coils zeroed")

print("\n=== Manual mode: half-turns work even without calibration ===")
order = controller.coil_half_turn("A", "unwind")
print(f"  unwound coil A by {order.steps:+d} steps "
      f"(cable is now {controller.status().lengths[0]:.1f} cm)")
controller.coil_half_turn("A", "wind")
print(f"  wound it back ({controller.status().lengths[0]:.1f} cm)")

print("\n=== Cartesian mode: one goto instead of coil juggling ===")
target = Point3(80.0, 45.0, 60.0)
orders = controller.goto_absolute(target)
print("  step orders: " + "  ".join(f"{c}:{o.steps:+d}"
                                    for c, o in orders.items()))
show_status(f"after goto ({target.x}, {target.y}, {target.z})")

print("\n=== Faults show red and block motion ===")
sim.inject_fault("C", FaultKind.COMM_FAILURE)
show_status("injected a comm failure on C")
try:
    controller.goto_absolute(Point3(60, 60, 80))
except Exception as exc:
    print(f"  goto refused: {exc}")
sim.clear_fault("C")
show_status("fault cleared")

print("\n=== Saved positions: record, leave, return ===")
saved = controller.save_current_position("demo spot")
print(f"  saved #{saved.id} '{saved.label}' at "
      f"({saved.point.x:.2f}, {saved.point.y:.2f}, {saved.point.z:.2f})")
controller.goto_absolute(Point3(30.0, 95.0, 100.0))
controller.recall_position(saved.id)
p = controller.status().position.position
print(f"  recalled: back at ({p.x:.2f}, {p.y:.2f}, {p.z:.2f})")
