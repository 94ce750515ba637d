"""Geometry core for a cable-suspended point platform.

Pure, stateless functions: closed-form inverse kinematics (position to
cable lengths), overdetermined forward kinematics by damped Gauss-Newton,
step quantization for the winch drums, planar trilateration of the coil
exit points from their pairwise distances, and workspace membership.

All distances are centimeters, all functions are safe to call from any
number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    CapExceededError,
    DegenerateLayoutError,
    InconsistentDistancesError,
    NotConvergedError,
    SingularGeometryError,
)

COIL_IDS = ("A", "B", "C", "D")

DEFAULT_HOME_LENGTH = 100.0          # cm of cable unwound at the zero mark
DEFAULT_DRUM_RADIUS = 3.5 / math.pi  # cm; one half-turn coils exactly 3.5 cm
DEFAULT_STEPS_PER_TURN = 200
DEFAULT_STEP_CAP = 1_000_000

FK_TOLERANCE = 1e-6        # cm, RMS length residual for a converged solve
COINCIDENCE_TOL = 1e-6     # cm, minimum separation between anchors
DISTANCE_SLACK = 1e-6      # cm, tolerated triangle-inequality violation

_FK_MAX_ITERATIONS = 100
_FK_STEP_TOL = 1e-10       # cm, Gauss-Newton step below this counts as stalled


def _require_finite(name, *values):
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Point3:
    """A point in the world frame, components in centimeters."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        _require_finite("Point3 component", self.x, self.y, self.z)

    def as_array(self):
        return np.array([self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, arr):
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))

    def distance_to(self, other):
        return math.dist((self.x, self.y, self.z), (other.x, other.y, other.z))


@dataclass(frozen=True)
class AnchorSet:
    """Ordered coil exit points (m >= 3; the default rig has four, A..D)."""

    anchors: tuple

    def __post_init__(self):
        anchors = tuple(self.anchors)
        object.__setattr__(self, "anchors", anchors)
        if len(anchors) < 3:
            raise ValueError(f"need at least 3 anchors, got {len(anchors)}")
        for i in range(len(anchors)):
            for j in range(i + 1, len(anchors)):
                if anchors[i].distance_to(anchors[j]) <= COINCIDENCE_TOL:
                    raise ValueError(
                        f"anchors {i} and {j} coincide "
                        f"(separation <= {COINCIDENCE_TOL} cm)"
                    )
        coords = np.array([[a.x, a.y, a.z] for a in anchors])
        centered = coords - coords.mean(axis=0)
        s = np.linalg.svd(centered, compute_uv=False)
        if s[1] <= 1e-9 * max(s[0], 1.0):
            raise SingularGeometryError(
                "anchors are collinear; forward kinematics is singular"
            )

    def __len__(self):
        return len(self.anchors)

    def __iter__(self):
        return iter(self.anchors)

    def __getitem__(self, i):
        return self.anchors[i]

    def as_array(self):
        return np.array([[a.x, a.y, a.z] for a in self.anchors])

    @classmethod
    def from_coordinates(cls, coords):
        return cls(tuple(Point3(float(x), float(y), float(z))
                         for x, y, z in coords))

    def labels(self):
        """Coil labels, A..D style (AA, AB, ... past four anchors)."""
        out = []
        for i in range(len(self.anchors)):
            if i < len(COIL_IDS):
                out.append(COIL_IDS[i])
            else:
                out.append("A" + chr(ord("A") + i - len(COIL_IDS)))
        return out


@dataclass(frozen=True)
class CableLengths:
    """Cable lengths in cm, index-aligned with an AnchorSet."""

    lengths: tuple

    def __post_init__(self):
        lengths = tuple(float(v) for v in self.lengths)
        object.__setattr__(self, "lengths", lengths)
        _require_finite("cable length", *lengths)
        for v in lengths:
            if v < 0:
                raise ValueError(f"cable length must be >= 0, got {v}")

    def __len__(self):
        return len(self.lengths)

    def __iter__(self):
        return iter(self.lengths)

    def __getitem__(self, i):
        return self.lengths[i]

    def as_array(self):
        return np.array(self.lengths, dtype=float)


@dataclass(frozen=True)
class WinchParams:
    """Static geometry of one coiling system."""

    home_length_l0: float = DEFAULT_HOME_LENGTH
    drum_radius_r: float = DEFAULT_DRUM_RADIUS
    steps_per_turn: int = DEFAULT_STEPS_PER_TURN

    def __post_init__(self):
        _require_finite("winch parameter", self.home_length_l0,
                        self.drum_radius_r)
        if self.home_length_l0 <= 0:
            raise ValueError("home_length_l0 must be > 0")
        if self.drum_radius_r <= 0:
            raise ValueError("drum_radius_r must be > 0")
        if int(self.steps_per_turn) != self.steps_per_turn or self.steps_per_turn < 1:
            raise ValueError("steps_per_turn must be a positive integer")

    @property
    def circumference(self):
        return 2.0 * math.pi * self.drum_radius_r

    @property
    def cm_per_step(self):
        return self.circumference / self.steps_per_turn


@dataclass(frozen=True)
class StepOrder:
    """A signed motor order: positive unwinds (lengthens), negative winds."""

    steps: int
    cap: int = field(default=DEFAULT_STEP_CAP, compare=False, repr=False)

    def __post_init__(self):
        if int(self.steps) != self.steps:
            raise ValueError(f"steps must be an integer, got {self.steps!r}")
        object.__setattr__(self, "steps", int(self.steps))
        if abs(self.steps) > self.cap:
            raise CapExceededError(
                f"order of {self.steps} steps exceeds the cap of {self.cap}"
            )


@dataclass(frozen=True)
class InterDistanceSet:
    """The six pairwise coil distances plus the common coil height.

    Over-determined on purpose: d_cd is not used to place D's baseline
    coordinates, only to pick D's mirror side and to report consistency.
    """

    d_ab: float
    d_ac: float
    d_ad: float
    d_bc: float
    d_bd: float
    d_cd: float
    plane_height: float

    def __post_init__(self):
        dists = (self.d_ab, self.d_ac, self.d_ad,
                 self.d_bc, self.d_bd, self.d_cd)
        _require_finite("inter-coil distance", *dists)
        _require_finite("plane height", self.plane_height)
        for v in dists:
            if v <= 0:
                raise ValueError(f"inter-coil distances must be > 0, got {v}")
        # every triple of coils must form a (possibly flat) triangle
        triples = [
            ("A", "B", "C", self.d_ab, self.d_ac, self.d_bc),
            ("A", "B", "D", self.d_ab, self.d_ad, self.d_bd),
            ("A", "C", "D", self.d_ac, self.d_ad, self.d_cd),
            ("B", "C", "D", self.d_bc, self.d_bd, self.d_cd),
        ]
        for p, q, r, dpq, dpr, dqr in triples:
            for side, others in ((dpq, dpr + dqr), (dpr, dpq + dqr),
                                 (dqr, dpq + dpr)):
                if side > others + DISTANCE_SLACK:
                    raise InconsistentDistancesError(
                        f"coils {p}{q}{r}: triangle inequality violated "
                        f"({side:.6g} > {others:.6g})"
                    )


@dataclass(frozen=True)
class PositionSolution:
    """Platform position recovered from cable lengths.

    ``residual`` is the RMS of the per-cable length residuals; the
    solution only claims ``converged`` when it is at or below tolerance.
    """

    position: Point3
    residual: float
    converged: bool
    iterations: int = 0


@dataclass(frozen=True)
class TrilaterationResult:
    anchors: AnchorSet
    residual: float


# --- inverse kinematics -----------------------------------------------------

def cable_lengths_for_position(p: Point3, anchors: AnchorSet) -> CableLengths:
    """Cable lengths to hold the platform at ``p``: Euclidean distances
    from each coil exit point."""
    diffs = anchors.as_array() - p.as_array()
    return CableLengths(tuple(np.linalg.norm(diffs, axis=1)))


def length_jacobian(p: Point3, anchors: AnchorSet) -> np.ndarray:
    """(m, 3) Jacobian of the cable lengths with respect to the platform
    position: row i is the unit vector from anchor i toward p.

    At a point coinciding with an anchor the length is not differentiable;
    that row is returned as zero.
    """
    diffs = p.as_array() - anchors.as_array()
    dists = np.linalg.norm(diffs, axis=1)
    jac = np.zeros_like(diffs)
    ok = dists > 1e-12
    jac[ok] = diffs[ok] / dists[ok, None]
    return jac


# --- forward kinematics -----------------------------------------------------

def _anchor_plane(coords):
    """Best-fit plane through the anchors: (centroid, unit normal, coplanar).

    The normal is canonically oriented with a non-negative z component so
    that "below the plane" means the hanging side of a horizontal rig.
    """
    centroid = coords.mean(axis=0)
    centered = coords - centroid
    _, s, vt = np.linalg.svd(centered)
    normal = vt[-1]
    if normal[2] < 0 or (normal[2] == 0 and (normal[1] < 0 or
                                             (normal[1] == 0 and normal[0] < 0))):
        normal = -normal
    spread = max(s[0], 1.0)
    coplanar = bool(np.max(np.abs(centered @ normal)) <= 1e-9 * spread)
    return centroid, normal, coplanar


def _gauss_newton(start, coords, lengths, max_iterations):
    """Damped Gauss-Newton on the length residuals from ``start``.

    Runs until the step stalls or the iteration cap is hit; returns
    (position, rms_residual, iterations). Never raises: assessment of the
    terminal residual is the caller's job.
    """
    p = np.asarray(start, dtype=float).copy()
    m = len(lengths)

    def residuals(q):
        return np.linalg.norm(q - coords, axis=1) - lengths

    r = residuals(p)
    ss = float(r @ r)
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        diffs = p - coords
        dists = np.linalg.norm(diffs, axis=1)
        jac = np.zeros_like(diffs)
        ok = dists > 1e-12
        jac[ok] = diffs[ok] / dists[ok, None]
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        if np.linalg.norm(step) <= _FK_STEP_TOL:
            break
        # backtracking line search: halve until the objective decreases
        alpha = 1.0
        improved = False
        for _ in range(30):
            trial = p + alpha * step
            r_trial = residuals(trial)
            ss_trial = float(r_trial @ r_trial)
            if ss_trial < ss:
                p, r, ss = trial, r_trial, ss_trial
                improved = True
                break
            alpha *= 0.5
        if not improved:
            break
    return p, math.sqrt(ss / m), iterations


def solve_platform_position(
    lengths: CableLengths,
    anchors: AnchorSet,
    hint: Optional[Point3] = None,
    *,
    tolerance: float = FK_TOLERANCE,
    max_iterations: int = _FK_MAX_ITERATIONS,
    raise_on_failure: bool = True,
) -> PositionSolution:
    """Recover the platform position from cable lengths by least squares.

    Minimizes the sum of squared length residuals with damped Gauss-Newton.
    A coplanar anchor layout admits a mirror pair of minimizers; without a
    hint the one below the anchor plane is returned (the platform hangs),
    a hint selects the minimizer nearer to it instead.

    Raises NotConvergedError if the terminal RMS residual exceeds
    ``tolerance`` (inconsistent lengths or degenerate geometry), unless
    ``raise_on_failure`` is false, in which case the best estimate is
    returned with ``converged=False``.
    """
    if len(lengths) != len(anchors):
        raise ValueError(
            f"{len(lengths)} lengths for {len(anchors)} anchors"
        )
    coords = anchors.as_array()
    lens = lengths.as_array()
    centroid, normal, coplanar = _anchor_plane(coords)

    if hint is not None:
        start = hint.as_array()
    else:
        start = centroid - normal  # 1 cm below the anchor plane

    pos, rms, iterations = _gauss_newton(start, coords, lens, max_iterations)

    if coplanar:
        # the objective is mirror-symmetric across the anchor plane, so the
        # reflected solution is an equally good minimizer; polish it and
        # apply the side-selection rule
        signed = float((pos - centroid) @ normal)
        if abs(signed) > _FK_STEP_TOL:
            mirror_start = pos - 2.0 * signed * normal
            mpos, mrms, mit = _gauss_newton(mirror_start, coords, lens,
                                            max_iterations)
            iterations += mit
            if hint is not None:
                harr = hint.as_array()
                take_mirror = (np.linalg.norm(mpos - harr)
                               < np.linalg.norm(pos - harr))
            else:
                take_mirror = ((mpos - centroid) @ normal) < signed
            if take_mirror and mrms <= rms + max(tolerance, 1e-9 * rms):
                pos, rms = mpos, mrms

    solution = PositionSolution(
        position=Point3.from_array(pos),
        residual=rms,
        converged=rms <= tolerance,
        iterations=iterations,
    )
    if not solution.converged and raise_on_failure:
        raise NotConvergedError(
            f"no position matches the given lengths "
            f"(RMS residual {rms:.6g} cm after {iterations} iterations)",
            position=solution.position,
            residual=rms,
            iterations=iterations,
        )
    return solution


# --- step quantization ------------------------------------------------------

def _round_half_away_from_zero(x):
    return math.floor(x + 0.5) if x >= 0 else math.ceil(x - 0.5)


def steps_for_length(
    target_length: float,
    current_length: float,
    params: WinchParams,
    cap: int = DEFAULT_STEP_CAP,
) -> StepOrder:
    """Motor order to change the unwound cable from ``current_length`` to
    ``target_length``: (delta / drum circumference) * steps per turn,
    rounded half away from zero."""
    _require_finite("length", target_length, current_length)
    if target_length < 0:
        raise ValueError(f"target length must be >= 0, got {target_length}")
    raw = (target_length - current_length) / params.circumference \
        * params.steps_per_turn
    steps = _round_half_away_from_zero(raw)
    if abs(steps) > cap:
        raise CapExceededError(
            f"order of {steps} steps exceeds the cap of {cap}"
        )
    return StepOrder(steps, cap=cap)


def length_for_steps(step_count: int, params: WinchParams) -> float:
    """Unwound cable length for a step counter value (0 = home = l0)."""
    return params.home_length_l0 + step_count * params.cm_per_step


# --- trilateration ----------------------------------------------------------

def _circle_intersection_x(base, r1, r2, pair):
    """x of the intersection of circles radius r1 at (0,0) and r2 at
    (base,0); raises if they cannot meet (beyond tolerance)."""
    if r1 + r2 < base - DISTANCE_SLACK or abs(r1 - r2) > base + DISTANCE_SLACK:
        raise InconsistentDistancesError(
            f"circles for coil {pair} do not intersect "
            f"(radii {r1:.6g}/{r2:.6g}, baseline {base:.6g})"
        )
    return (base * base + r1 * r1 - r2 * r2) / (2.0 * base)


def trilaterate_anchors(d: InterDistanceSet) -> TrilaterationResult:
    """Planar coil coordinates from the six inter-coil distances.

    Gauge fixing removes the rigid-motion freedom: A at the origin of the
    coil plane, B on the +x axis, C in the +y half-plane; D's mirror side
    is chosen to better match d_cd. The returned residual |dist(C,D) -
    d_cd| surfaces how consistent the over-determined input was.
    """
    if d.d_ab < COINCIDENCE_TOL:
        raise DegenerateLayoutError(
            f"A-B baseline is below {COINCIDENCE_TOL} cm"
        )
    h = d.plane_height

    xc = _circle_intersection_x(d.d_ab, d.d_ac, d.d_bc, "C")
    yc = math.sqrt(max(0.0, d.d_ac ** 2 - xc ** 2))

    xd = _circle_intersection_x(d.d_ab, d.d_ad, d.d_bd, "D")
    yd_mag = math.sqrt(max(0.0, d.d_ad ** 2 - xd ** 2))
    err_pos = abs(math.dist((xc, yc), (xd, yd_mag)) - d.d_cd)
    err_neg = abs(math.dist((xc, yc), (xd, -yd_mag)) - d.d_cd)
    yd = yd_mag if err_pos <= err_neg else -yd_mag

    try:
        anchors = AnchorSet((
            Point3(0.0, 0.0, h),
            Point3(d.d_ab, 0.0, h),
            Point3(xc, yc, h),
            Point3(xd, yd, h),
        ))
    except (ValueError, SingularGeometryError) as exc:
        raise DegenerateLayoutError(
            f"recovered coil layout is degenerate: {exc}"
        ) from exc
    return TrilaterationResult(anchors=anchors, residual=min(err_pos, err_neg))


# --- workspace --------------------------------------------------------------

def workspace_bounds(anchors: AnchorSet):
    """((min_x, min_y, min_z), (max_x, max_y, max_z)) of the region the
    controller accepts: the anchors' x/y bounding box, z from the floor
    up to the lowest coil."""
    coords = anchors.as_array()
    lo = (float(coords[:, 0].min()), float(coords[:, 1].min()), 0.0)
    hi = (float(coords[:, 0].max()), float(coords[:, 1].max()),
          float(coords[:, 2].min()))
    return lo, hi


def workspace_contains(p: Point3, anchors: AnchorSet) -> bool:
    """True iff ``p`` lies inside the coil-delimited box (faces inclusive)."""
    lo, hi = workspace_bounds(anchors)
    return (lo[0] <= p.x <= hi[0]
            and lo[1] <= p.y <= hi[1]
            and lo[2] <= p.z <= hi[2])
