"""Deterministic simulator of the stepper-driven coiling systems.

Stands in for the motor-controller boards behind a small driver
capability set, so every layer above it can be exercised without
hardware. Discrete orders apply atomically; continuous jog accrues with
the simulation clock; faults are injectable (never spontaneous) so tests
stay deterministic.
"""

from __future__ import annotations

import enum
import math
import threading
import time
from dataclasses import dataclass
from typing import Optional, Protocol

from .errors import (
    AlreadyJoggingError,
    CableRangeError,
    CoilBusyError,
    CoilFaultError,
    NotJoggingError,
)
from .kinematics import COIL_IDS, StepOrder, WinchParams, length_for_steps

DEFAULT_JOG_SPEED = 50.0   # steps/s, about 1.75 cm/s at default drum size
_FAULT_POLL_INTERVAL = 0.02  # s, fault check cadence during a timed order

WIND = "wind"
UNWIND = "unwind"
JOG_DIRECTIONS = (WIND, UNWIND)


class FaultKind(str, enum.Enum):
    NOT_DETECTED = "not_detected"
    COMM_FAILURE = "comm_failure"


@dataclass(frozen=True)
class JogInfo:
    direction: str
    speed: float       # steps/s, always positive; direction carries the sign
    started_at: float  # clock timestamp


@dataclass(frozen=True)
class WinchState:
    """Snapshot of one coil; ``step_count`` includes live jog accrual."""

    coil_id: str
    step_count: int
    zeroed: bool
    fault: Optional[FaultKind]
    jog: Optional[JogInfo]

    @property
    def jogging(self):
        return self.jog is not None

    @property
    def color(self):
        """Status light: red on fault, orange until zeroed, else green."""
        if self.fault is not None:
            return "red"
        return "green" if self.zeroed else "orange"


class WinchDriver(Protocol):
    """Capability set the controller expects from the motor layer.

    The simulator below is the only implementation shipped; a process
    runs exactly one driver.
    """

    @property
    def coil_ids(self) -> tuple: ...

    def execute_steps(self, coil: str, order: StepOrder) -> int: ...

    def start_jog(self, coil: str, direction: str,
                  speed: Optional[float] = None) -> None: ...

    def stop_jog(self, coil: str) -> int: ...

    def save_zero(self, coil: str) -> None: ...

    def probe(self, coil: str) -> WinchState: ...


class SimClock:
    """Monotonic time source; ``manual`` mode advances only on request."""

    REALTIME = "realtime"
    MANUAL = "manual"

    def __init__(self, mode=REALTIME):
        if mode not in (self.REALTIME, self.MANUAL):
            raise ValueError(f"unknown clock mode {mode!r}")
        self.mode = mode
        self._manual_now = 0.0

    @classmethod
    def manual(cls):
        return cls(mode=cls.MANUAL)

    @classmethod
    def realtime(cls):
        return cls(mode=cls.REALTIME)

    def now(self):
        if self.mode == self.MANUAL:
            return self._manual_now
        return time.monotonic()

    def advance(self, seconds):
        if self.mode != self.MANUAL:
            raise RuntimeError("advance() is only valid on a manual clock")
        if seconds < 0:
            raise ValueError("cannot advance time backwards")
        self._manual_now += seconds


@dataclass(frozen=True)
class _CoilRecord:
    """Immutable per-coil state, swapped atomically on every mutation."""

    step_count: int = 0
    zeroed: bool = False
    fault: Optional[FaultKind] = None
    jog: Optional[JogInfo] = None


class WinchSimulator:
    """Simulated bank of stepper winches implementing ``WinchDriver``.

    Mutating commands are serialized through one internal lock (concurrent
    callers queue); ``probe``/``states`` read atomic snapshots without
    locking. Fault injection bypasses the command queue so an in-flight
    timed order can be failed, mirroring a cable or USB dropping out
    mid-move.
    """

    def __init__(self, params=None, coils=COIL_IDS, clock=None, rate=None,
                 jog_speed=DEFAULT_JOG_SPEED):
        if params is None:
            params = WinchParams()
        if isinstance(params, WinchParams):
            params = {coil: params for coil in coils}
        self._params = dict(params)
        self._coils = tuple(coils)
        for coil in self._coils:
            if coil not in self._params:
                raise ValueError(f"no winch parameters for coil {coil!r}")
        if rate is not None and rate <= 0:
            raise ValueError("rate must be positive steps/s or None")
        if jog_speed <= 0:
            raise ValueError("jog_speed must be positive")
        self.clock = clock if clock is not None else SimClock.realtime()
        self._rate = rate
        self._jog_speed = jog_speed
        self._command_lock = threading.Lock()   # serializes mutating commands
        self._state_guard = threading.Lock()    # protects record swaps only
        self._records = {coil: _CoilRecord() for coil in self._coils}

    @property
    def coil_ids(self):
        return self._coils

    def params_for(self, coil):
        return self._params[self._check_coil(coil)]

    def set_params(self, coil, params: WinchParams):
        """Adopt new drum geometry for a coil (remote config edits)."""
        self._params[self._check_coil(coil)] = params

    # --- reads (wait-free) ---------------------------------------------

    def probe(self, coil):
        record = self._records[self._check_coil(coil)]
        return self._snapshot(coil, record)

    def states(self):
        return {coil: self._snapshot(coil, self._records[coil])
                for coil in self._coils}

    # --- commands (serialized) -------------------------------------------

    def execute_steps(self, coil, order):
        """Apply a discrete order; returns the new step count.

        Atomic: either every step lands or none does. With a configured
        step rate on a realtime clock, completion is delayed by
        |steps| / rate and a fault injected meanwhile aborts the order
        with zero steps applied.
        """
        coil = self._check_coil(coil)
        if not isinstance(order, StepOrder):
            order = StepOrder(int(order))
        with self._command_lock:
            record = self._records[coil]
            self._require_healthy(coil, record)
            if record.jog is not None:
                raise CoilBusyError(f"coil {coil} is jogging")
            new_count = record.step_count + order.steps
            self._require_in_range(coil, new_count)
            if (self._rate is not None and order.steps != 0
                    and self.clock.mode == SimClock.REALTIME):
                self._run_at_rate(coil, abs(order.steps) / self._rate)
            with self._state_guard:
                record = self._records[coil]
                self._require_healthy(coil, record)  # mid-move injection
                self._records[coil] = _CoilRecord(
                    step_count=record.step_count + order.steps,
                    zeroed=record.zeroed, fault=None, jog=None)
            return self._records[coil].step_count

    def start_jog(self, coil, direction, speed=None):
        coil = self._check_coil(coil)
        if direction not in JOG_DIRECTIONS:
            raise ValueError(f"direction must be one of {JOG_DIRECTIONS}")
        speed = self._jog_speed if speed is None else float(speed)
        if speed <= 0:
            raise ValueError("jog speed must be positive")
        with self._command_lock:
            record = self._records[coil]
            self._require_healthy(coil, record)
            if record.jog is not None:
                raise AlreadyJoggingError(f"coil {coil} is already jogging")
            if direction == WIND and record.step_count <= self._floor_count(coil):
                raise CableRangeError(
                    f"coil {coil} is fully wound; cannot wind further")
            jog = JogInfo(direction=direction, speed=speed,
                          started_at=self.clock.now())
            with self._state_guard:
                record = self._records[coil]
                self._require_healthy(coil, record)
                self._records[coil] = _CoilRecord(
                    step_count=record.step_count, zeroed=record.zeroed,
                    fault=None, jog=jog)

    def stop_jog(self, coil):
        """Stop a running jog; returns the signed steps it accrued."""
        coil = self._check_coil(coil)
        with self._command_lock:
            record = self._records[coil]
            if record.jog is None:
                raise NotJoggingError(f"coil {coil} is not jogging")
            accrued = self._jog_accrued(coil, record, self.clock.now())
            with self._state_guard:
                base = self._records[coil]
                self._records[coil] = _CoilRecord(
                    step_count=base.step_count + accrued,
                    zeroed=base.zeroed, fault=base.fault, jog=None)
            return accrued

    def save_zero(self, coil):
        """Declare the current cable length to be the home length l0."""
        coil = self._check_coil(coil)
        with self._command_lock:
            record = self._records[coil]
            self._require_healthy(coil, record)
            jog = record.jog
            if jog is not None:
                # zero refers to "now": restart accrual from the new home
                jog = JogInfo(direction=jog.direction, speed=jog.speed,
                              started_at=self.clock.now())
            with self._state_guard:
                self._records[coil] = _CoilRecord(
                    step_count=0, zeroed=True, fault=None, jog=jog)

    # --- fault injection (test hook, bypasses the command queue) --------

    def inject_fault(self, coil, kind):
        coil = self._check_coil(coil)
        kind = FaultKind(kind)
        with self._state_guard:
            record = self._records[coil]
            self._records[coil] = _CoilRecord(
                step_count=record.step_count, zeroed=record.zeroed,
                fault=kind, jog=record.jog)

    def clear_fault(self, coil):
        coil = self._check_coil(coil)
        with self._state_guard:
            record = self._records[coil]
            if record.fault is None:
                return
            self._records[coil] = _CoilRecord(
                step_count=record.step_count, zeroed=record.zeroed,
                fault=None, jog=record.jog)

    # --- internals -------------------------------------------------------

    def _check_coil(self, coil):
        if coil not in self._records:
            raise ValueError(f"unknown coil {coil!r}")
        return coil

    def _require_healthy(self, coil, record):
        if record.fault is not None:
            raise CoilFaultError(
                f"coil {coil} is faulted ({record.fault.value})",
                coil=coil, kind=record.fault, steps_applied=0)

    def _floor_count(self, coil):
        """Lowest step count that keeps the unwound length >= 0."""
        params = self._params[coil]
        return math.ceil(-params.home_length_l0 / params.cm_per_step)

    def _require_in_range(self, coil, count):
        if length_for_steps(count, self._params[coil]) < 0:
            raise CableRangeError(
                f"order would wind coil {coil} past the end of its cable")

    def _jog_accrued(self, coil, record, now):
        """Signed whole steps a jog has completed by ``now``, clamped so
        winding stalls at the end of the cable."""
        jog = record.jog
        elapsed = max(0.0, now - jog.started_at)
        steps = math.floor(jog.speed * elapsed + 1e-9)
        if jog.direction == WIND:
            steps = -steps
            floor = self._floor_count(coil) - record.step_count
            steps = max(steps, floor)
        return steps

    def _snapshot(self, coil, record):
        count = record.step_count
        if record.jog is not None:
            count += self._jog_accrued(coil, record, self.clock.now())
        return WinchState(coil_id=coil, step_count=count,
                          zeroed=record.zeroed, fault=record.fault,
                          jog=record.jog)

    def _run_at_rate(self, coil, duration):
        """Realtime delay for a timed order, aborting on fault injection."""
        deadline = time.monotonic() + duration
        while True:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                return
            time.sleep(min(_FAULT_POLL_INTERVAL, remaining))
            record = self._records[coil]
            if record.fault is not None:
                self._require_healthy(coil, record)
