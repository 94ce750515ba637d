"""Geometric layer: turns Cartesian intents into per-coil step orders.

Owns the robot configuration (anchors, winch parameters, saved
positions), derives cable lengths from the driver's step counters by
dead reckoning, and keeps a pose estimate for the forward solver.

All mutating operations are expected to run under the service's global
movement lock; the controller additionally fails fast with
``RobotBusyError`` if two mutating calls ever overlap. ``status()`` and
``list_positions()`` are lock-free reads.
"""

from __future__ import annotations

import itertools
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import (
    CableRangeError,
    CoilBusyError,
    CoilFaultError,
    NothingToCommitError,
    NotZeroedError,
    OutOfWorkspaceError,
    RobotBusyError,
    UnknownPositionError,
)
from .kinematics import (
    FK_TOLERANCE,
    AnchorSet,
    CableLengths,
    InterDistanceSet,
    Point3,
    PositionSolution,
    StepOrder,
    TrilaterationResult,
    cable_lengths_for_position,
    length_for_steps,
    solve_platform_position,
    steps_for_length,
    trilaterate_anchors,
    workspace_bounds,
    workspace_contains,
)

DEFAULT_JOG_AXIS_STEP = 5.0  # cm per axis-jog button press

AXES = ("x", "y", "z")
SIGNS = ("+", "-")

GOTO_ABSOLUTE = "goto_absolute"
SHIFT_RELATIVE = "shift_relative"
AXIS_JOG = "axis_jog"
COIL_HALF_TURN = "coil_half_turn"
MOVE_KINDS = (GOTO_ABSOLUTE, SHIFT_RELATIVE, AXIS_JOG, COIL_HALF_TURN)


@dataclass(frozen=True)
class SavedPosition:
    id: int
    label: str
    point: Point3


@dataclass
class RobotConfig:
    """Everything the controller needs to know about one rig."""

    anchors: AnchorSet
    winch_params: dict
    saved_positions: list = field(default_factory=list)
    jog_axis_step: float = DEFAULT_JOG_AXIS_STEP
    half_turn_steps: Optional[int] = None  # None: derived per coil as N/2

    def __post_init__(self):
        if self.jog_axis_step <= 0:
            raise ValueError("jog_axis_step must be positive")
        if self.half_turn_steps is not None and self.half_turn_steps < 1:
            raise ValueError("half_turn_steps must be a positive integer")
        ids = [p.id for p in self.saved_positions]
        if len(ids) != len(set(ids)):
            raise ValueError("saved position ids must be unique")

    def half_turn_for(self, coil):
        if self.half_turn_steps is not None:
            return self.half_turn_steps
        return self.winch_params[coil].steps_per_turn // 2


@dataclass(frozen=True)
class CoilStatus:
    color: str
    zeroed: bool
    fault: Optional[str]
    jogging: bool


@dataclass(frozen=True)
class RobotStatus:
    lengths: CableLengths
    position: PositionSolution
    coil_states: dict
    all_zeroed: bool


@dataclass(frozen=True)
class MoveCommand:
    """One movement intent; exactly the payload for its kind is set."""

    kind: str
    target: Optional[Point3] = None
    delta: Optional[Point3] = None
    axis: Optional[str] = None
    sign: Optional[str] = None
    coil: Optional[str] = None
    direction: Optional[str] = None

    _REQUIRED = {
        GOTO_ABSOLUTE: ("target",),
        SHIFT_RELATIVE: ("delta",),
        AXIS_JOG: ("axis", "sign"),
        COIL_HALF_TURN: ("coil", "direction"),
    }

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        required = self._REQUIRED[self.kind]
        all_payload = ("target", "delta", "axis", "sign", "coil", "direction")
        for name in all_payload:
            value = getattr(self, name)
            if name in required and value is None:
                raise ValueError(f"{self.kind} requires {name}")
            if name not in required and value is not None:
                raise ValueError(f"{self.kind} does not take {name}")


class CableRobotController:
    """Drives one rig through a ``WinchDriver``."""

    def __init__(self, driver, config: RobotConfig,
                 fk_tolerance: float = FK_TOLERANCE,
                 status_tolerance: Optional[float] = None,
                 on_config_change: Optional[Callable] = None):
        coils = tuple(driver.coil_ids)
        if len(config.anchors) != len(coils):
            raise ValueError(
                f"{len(config.anchors)} anchors for {len(coils)} coils")
        for coil in coils:
            if coil not in config.winch_params:
                raise ValueError(f"no winch parameters for coil {coil!r}")
        self._driver = driver
        self._coils = coils
        self.config = config
        if status_tolerance is None:
            # dead-reckoned lengths carry up to half a step of quantization
            # error per cable, so that is the convergence floor for status
            status_tolerance = max(
                fk_tolerance,
                max(config.winch_params[c].cm_per_step for c in coils) / 2.0)
        self._status_tolerance = status_tolerance
        self._on_config_change = on_config_change
        self._mutate_lock = threading.Lock()
        self._pose_hint: Optional[Point3] = None
        self._pending_anchors: Optional[AnchorSet] = None
        self._position_ids = itertools.count(
            max((p.id for p in config.saved_positions), default=0) + 1)

    @property
    def coil_ids(self):
        return self._coils

    def set_config_listener(self, callback: Optional[Callable]):
        """Install the persistence hook called after config mutations."""
        self._on_config_change = callback

    # --- reads (lock-free) -----------------------------------------------

    def status(self) -> RobotStatus:
        """Current lengths, solved position and per-coil health.

        Pure read: never touches the motors, never raises for an
        unsolvable pose (the position is carried with converged=False).
        """
        states = self._driver.states()
        lengths = self._lengths_from(states, clamp=True)
        position = solve_platform_position(
            lengths, self.config.anchors, hint=self._pose_hint,
            tolerance=self._status_tolerance, raise_on_failure=False)
        coil_states = {
            coil: CoilStatus(
                color=state.color,
                zeroed=state.zeroed,
                fault=state.fault.value if state.fault else None,
                jogging=state.jogging,
            )
            for coil, state in states.items()
        }
        return RobotStatus(
            lengths=lengths,
            position=position,
            coil_states=coil_states,
            all_zeroed=all(s.zeroed for s in states.values()),
        )

    def list_positions(self):
        return list(self.config.saved_positions)

    # --- Cartesian moves ---------------------------------------------------

    def goto_absolute(self, target: Point3):
        """Move the platform to an absolute position.

        Computes target cable lengths, quantizes them into per-coil step
        orders from the current dead-reckoned lengths, and executes all
        of them. Preconditions (every coil zeroed, healthy and idle;
        target inside the workspace; no order out of cable range) are
        checked before any motor moves, so the command applies all
        orders or none.
        """
        with self._mutation():
            return self._goto_locked(target)

    def shift_relative(self, delta: Point3):
        """Move by a vector from the current (solved) position."""
        with self._mutation():
            current = self._solved_position()
            target = Point3(current.x + delta.x, current.y + delta.y,
                            current.z + delta.z)
            return self._goto_locked(target)

    def axis_jog(self, axis: str, sign: str):
        """Shift by the configured per-axis step (default 5 cm)."""
        if axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}")
        if sign not in SIGNS:
            raise ValueError(f"sign must be one of {SIGNS}")
        step = self.config.jog_axis_step if sign == "+" else -self.config.jog_axis_step
        delta = Point3(*(step if a == axis else 0.0 for a in AXES))
        return self.shift_relative(delta)

    def coil_half_turn(self, coil: str, direction: str):
        """Wind or unwind one coil by half a drum turn.

        Deliberately available before calibration: zeroing is not
        required, only a healthy, idle coil.
        """
        coil = self._check_coil(coil)
        if direction not in ("wind", "unwind"):
            raise ValueError("direction must be 'wind' or 'unwind'")
        steps = self.config.half_turn_for(coil)
        order = StepOrder(steps if direction == "unwind" else -steps)
        with self._mutation():
            self._driver.execute_steps(coil, order)
            return order

    def execute_move(self, command: MoveCommand):
        if command.kind == GOTO_ABSOLUTE:
            return self.goto_absolute(command.target)
        if command.kind == SHIFT_RELATIVE:
            return self.shift_relative(command.delta)
        if command.kind == AXIS_JOG:
            return self.axis_jog(command.axis, command.sign)
        return self.coil_half_turn(command.coil, command.direction)

    # --- calibration -------------------------------------------------------

    def calibration_start_jog(self, coil, direction, speed=None):
        with self._mutation():
            self._driver.start_jog(self._check_coil(coil), direction, speed)

    def calibration_stop(self, coil):
        with self._mutation():
            return self._driver.stop_jog(self._check_coil(coil))

    def calibration_save_zero(self, coil):
        with self._mutation():
            self._driver.save_zero(self._check_coil(coil))

    # --- saved positions ---------------------------------------------------

    def save_current_position(self, label: str) -> SavedPosition:
        with self._mutation():
            snapshot = self._solved_position()
            saved = SavedPosition(id=next(self._position_ids),
                                  label=str(label), point=snapshot)
            self.config.saved_positions.append(saved)
            self._persist()
            return saved

    def recall_position(self, position_id: int):
        saved = self._find_position(position_id)
        return self.goto_absolute(saved.point)

    def delete_position(self, position_id: int):
        with self._mutation():
            saved = self._find_position(position_id)
            self.config.saved_positions.remove(saved)
            self._persist()

    # --- trilateration -------------------------------------------------------

    def apply_trilateration(self, distances: InterDistanceSet) -> TrilaterationResult:
        """Solve coil coordinates from inter-distances without touching
        the configuration; the proposal is kept for a later commit."""
        result = trilaterate_anchors(distances)
        if len(result.anchors) != len(self._coils):
            raise ValueError("trilateration yields a four-coil layout only")
        with self._mutation():
            self._pending_anchors = result.anchors
        return result

    def commit_trilateration(self, proposed: Optional[AnchorSet] = None):
        """Adopt the last solved (or an explicitly passed) coil layout."""
        with self._mutation():
            anchors = proposed if proposed is not None else self._pending_anchors
            if anchors is None:
                raise NothingToCommitError(
                    "no trilateration solution to commit; solve first")
            if len(anchors) != len(self._coils):
                raise ValueError(
                    f"{len(anchors)} anchors for {len(self._coils)} coils")
            self.config.anchors = anchors
            self._pending_anchors = None
            self._pose_hint = None
            self._persist()

    # --- configuration -------------------------------------------------------

    def adopt_config(self, config: RobotConfig):
        """Replace the whole robot configuration (remote config edit).

        Does not persist; the caller owns persistence. Resets the pose
        estimate and the pending trilateration proposal.
        """
        if len(config.anchors) != len(self._coils):
            raise ValueError(
                f"{len(config.anchors)} anchors for {len(self._coils)} coils")
        for coil in self._coils:
            if coil not in config.winch_params:
                raise ValueError(f"no winch parameters for coil {coil!r}")
        with self._mutation():
            self.config = config
            self._pose_hint = None
            self._pending_anchors = None
            self._position_ids = itertools.count(
                max((p.id for p in config.saved_positions), default=0) + 1)

    # --- internals -----------------------------------------------------------

    @contextmanager
    def _mutation(self):
        if not self._mutate_lock.acquire(blocking=False):
            raise RobotBusyError("another command is in progress")
        try:
            yield
        finally:
            self._mutate_lock.release()

    def _check_coil(self, coil):
        if coil not in self._coils:
            raise ValueError(f"unknown coil {coil!r}")
        return coil

    def _lengths_from(self, states, clamp=False):
        values = []
        for coil in self._coils:
            length = length_for_steps(states[coil].step_count,
                                      self.config.winch_params[coil])
            values.append(max(0.0, length) if clamp else length)
        return CableLengths(tuple(values))

    def _solved_position(self) -> Point3:
        states = self._driver.states()
        lengths = self._lengths_from(states, clamp=True)
        solution = solve_platform_position(
            lengths, self.config.anchors, hint=self._pose_hint,
            tolerance=self._status_tolerance, raise_on_failure=False)
        return solution.position

    def _goto_locked(self, target: Point3):
        states = self._driver.states()
        for coil in self._coils:
            state = states[coil]
            if state.fault is not None:
                raise CoilFaultError(
                    f"coil {coil} is faulted ({state.fault.value})",
                    coil=coil, kind=state.fault)
        not_zeroed = [coil for coil in self._coils if not states[coil].zeroed]
        if not_zeroed:
            raise NotZeroedError(
                f"coils {', '.join(not_zeroed)} are not zeroed; "
                "calibrate before Cartesian moves")
        jogging = [coil for coil in self._coils if states[coil].jogging]
        if jogging:
            raise CoilBusyError(f"coils {', '.join(jogging)} are jogging")
        if not workspace_contains(target, self.config.anchors):
            lo, hi = workspace_bounds(self.config.anchors)
            raise OutOfWorkspaceError(
                f"({target.x:.6g}, {target.y:.6g}, {target.z:.6g}) is outside "
                f"the coil-delimited box x:[{lo[0]:.6g}, {hi[0]:.6g}] "
                f"y:[{lo[1]:.6g}, {hi[1]:.6g}] z:[{lo[2]:.6g}, {hi[2]:.6g}]")

        target_lengths = cable_lengths_for_position(target, self.config.anchors)
        orders = {}
        for coil, target_length in zip(self._coils, target_lengths):
            params = self.config.winch_params[coil]
            current = length_for_steps(states[coil].step_count, params)
            order = steps_for_length(target_length, current, params)
            reached = length_for_steps(states[coil].step_count + order.steps,
                                       params)
            if reached < 0:
                raise CableRangeError(
                    f"move would wind coil {coil} past the end of its cable")
            orders[coil] = order

        for coil, order in orders.items():
            self._driver.execute_steps(coil, order)

        self._pose_hint = solve_platform_position(
            self._lengths_from(self._driver.states(), clamp=True),
            self.config.anchors, hint=target,
            tolerance=self._status_tolerance, raise_on_failure=False).position
        return orders

    def _find_position(self, position_id):
        for saved in self.config.saved_positions:
            if saved.id == position_id:
                return saved
        raise UnknownPositionError(f"no saved position with id {position_id}")

    def _persist(self):
        if self._on_config_change is not None:
            self._on_config_change(self.config)
