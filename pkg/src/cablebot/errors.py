"""Exception taxonomy shared by all cablebot layers.

Every exception carries a stable machine-readable ``code`` so the HTTP
service can map failures to wire errors without string matching.
"""

from __future__ import annotations


class CablebotError(Exception):
    """Base class for all cablebot errors."""

    code = "error"


# --- geometry / solver ------------------------------------------------------

class SingularGeometryError(CablebotError):
    """Anchor layout is collinear (or otherwise rank-deficient)."""

    code = "singular_geometry"


class NotConvergedError(CablebotError):
    """Position solve terminated with residual above tolerance.

    Carries the best iterate so callers can report a degraded estimate
    instead of losing it.
    """

    code = "not_converged"

    def __init__(self, message, position=None, residual=None, iterations=None):
        super().__init__(message)
        self.position = position
        self.residual = residual
        self.iterations = iterations


class CapExceededError(CablebotError):
    """A single step order exceeds the configured hard cap."""

    code = "cap_exceeded"


class InconsistentDistancesError(CablebotError):
    """Inter-coil distances violate a triangle inequality beyond tolerance."""

    code = "inconsistent_distances"


class DegenerateLayoutError(CablebotError):
    """Distances describe a collapsed layout (e.g. zero A-B baseline)."""

    code = "degenerate_layout"


# --- winch driver -----------------------------------------------------------

class CoilFaultError(CablebotError):
    """The coil is in a fault state (or faulted mid-command).

    ``steps_applied`` reports how many steps of the failing order actually
    reached the motor (always 0 here: simulated orders apply atomically).
    """

    code = "faulted"

    def __init__(self, message, coil=None, kind=None, steps_applied=0):
        super().__init__(message)
        self.coil = coil
        self.kind = kind
        self.steps_applied = steps_applied


class CoilBusyError(CablebotError):
    """A discrete order was issued while the coil is jogging."""

    code = "busy"


class AlreadyJoggingError(CablebotError):
    code = "already_jogging"


class NotJoggingError(CablebotError):
    code = "not_jogging"


class CableRangeError(CablebotError):
    """Command would drive the unwound cable length below zero."""

    code = "out_of_range"


# --- controller / service ---------------------------------------------------

class NotZeroedError(CablebotError):
    """A Cartesian move was requested before every coil was zeroed."""

    code = "not_zeroed"


class OutOfWorkspaceError(CablebotError):
    code = "out_of_workspace"


class UnknownPositionError(CablebotError):
    """No saved position with the requested id."""

    code = "unknown_id"


class NothingToCommitError(CablebotError):
    """Trilateration commit without a prior solve in this session."""

    code = "nothing_to_commit"


class RobotBusyError(CablebotError):
    """The global movement lock is held by another command."""

    code = "busy"


class ConfigError(CablebotError):
    """Configuration file is unreadable, corrupt or has an unknown schema."""

    code = "bad_config"
