"""Control stack for a four-cable suspended platform.

Layers, bottom up: ``kinematics`` (pure geometry), ``winchsim`` (simulated
stepper winches behind the driver interface), ``controller`` (Cartesian
moves, calibration and saved positions), ``service`` (JSON-over-HTTP
remote control plus the ``cablebotd`` entry point).
"""

from .kinematics import (
    COIL_IDS,
    AnchorSet,
    CableLengths,
    InterDistanceSet,
    Point3,
    PositionSolution,
    StepOrder,
    TrilaterationResult,
    WinchParams,
    cable_lengths_for_position,
    length_for_steps,
    length_jacobian,
    solve_platform_position,
    steps_for_length,
    trilaterate_anchors,
    workspace_bounds,
    workspace_contains,
)

__version__ = "0.1.0"
