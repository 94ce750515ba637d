"""Inverse kinematics, step quantization and workspace membership."""

import math

import numpy as np
import pytest

from cablebot import (
    AnchorSet,
    CableLengths,
    Point3,
    StepOrder,
    WinchParams,
    cable_lengths_for_position,
    length_for_steps,
    steps_for_length,
    workspace_bounds,
    workspace_contains,
)
from cablebot.errors import CapExceededError, SingularGeometryError
from helpers import square_anchors

DEFAULTS = WinchParams()


class TestCableLengths:
    def test_platform_at_anchor_gives_zero_length(self):
        anchors = square_anchors()
        lengths = cable_lengths_for_position(anchors[0], anchors)
        assert lengths[0] == 0.0

    def test_pythagorean_triple(self):
        anchors = AnchorSet.from_coordinates(
            [(0, 0, 0), (10, 0, 0), (10, 10, 0), (0, 10, 0)])
        lengths = cable_lengths_for_position(Point3(1, 2, 2), anchors)
        assert lengths[0] == pytest.approx(3.0, abs=1e-12)

    def test_symmetric_point_equidistant(self):
        lengths = cable_lengths_for_position(Point3(1, 1, 0), square_anchors())
        for value in lengths:
            assert value == pytest.approx(math.sqrt(6), abs=1e-12)

    def test_implicit_relations_hold_exactly(self):
        rng = np.random.default_rng(7)
        anchors = square_anchors(side=120.0, height=150.0)
        for _ in range(50):
            p = Point3(*rng.uniform(-50, 200, size=3))
            lengths = cable_lengths_for_position(p, anchors)
            # residuals evaluated exactly as the forward solver evaluates them
            dists = np.linalg.norm(p.as_array() - anchors.as_array(), axis=1)
            residuals = dists - lengths.as_array()
            assert np.all(residuals == 0.0)


class TestStepQuantization:
    def test_no_motion_is_zero_steps(self):
        assert steps_for_length(100.0, 100.0, DEFAULTS).steps == 0

    def test_half_turn_is_100_steps(self):
        assert steps_for_length(103.5, 100.0, DEFAULTS).steps == 100

    def test_full_turn_is_200_steps(self):
        assert steps_for_length(107.0, 100.0, DEFAULTS).steps == 200

    def test_winding_is_negative(self):
        assert steps_for_length(93.0, 100.0, DEFAULTS).steps == -200

    def test_matches_motor_order_formula_from_home(self):
        # independent evaluation of (l - l0) / (2 pi r) * N with the same
        # half-away-from-zero rounding
        rng = np.random.default_rng(11)
        l0 = DEFAULTS.home_length_l0
        for target in rng.uniform(0.0, 500.0, size=1000):
            raw = (target - l0) / (2.0 * math.pi * DEFAULTS.drum_radius_r) \
                * DEFAULTS.steps_per_turn
            expected = math.floor(raw + 0.5) if raw >= 0 else math.ceil(raw - 0.5)
            assert steps_for_length(float(target), l0, DEFAULTS).steps == expected

    def test_rounding_symmetric_for_wind_and_unwind(self):
        rng = np.random.default_rng(13)
        for delta in rng.uniform(0.0, 50.0, size=200):
            up = steps_for_length(100.0 + delta, 100.0, DEFAULTS).steps
            down = steps_for_length(100.0 - delta, 100.0, DEFAULTS).steps
            assert up == -down

    def test_quantization_bound(self):
        rng = np.random.default_rng(17)
        bound = math.pi * DEFAULTS.drum_radius_r / DEFAULTS.steps_per_turn
        for _ in range(500):
            current = float(rng.uniform(10.0, 300.0))
            target = float(rng.uniform(0.0, 300.0))
            order = steps_for_length(target, current, DEFAULTS)
            reached = current + order.steps * DEFAULTS.cm_per_step
            assert abs(reached - target) <= bound + 1e-12

    def test_cap_exceeded(self):
        with pytest.raises(CapExceededError):
            steps_for_length(10_000.0, 100.0, DEFAULTS, cap=1000)

    def test_negative_target_rejected(self):
        with pytest.raises(ValueError):
            steps_for_length(-1.0, 100.0, DEFAULTS)

    def test_length_for_steps_home(self):
        assert length_for_steps(0, DEFAULTS) == 100.0

    def test_length_for_steps_half_turn(self):
        assert length_for_steps(100, DEFAULTS) == pytest.approx(103.5, abs=1e-12)

    def test_length_for_steps_two_turns_wound(self):
        assert length_for_steps(-200, DEFAULTS) == pytest.approx(93.0, abs=1e-12)

    def test_round_trip_through_steps(self):
        rng = np.random.default_rng(19)
        for _ in range(200):
            count = int(rng.integers(-2000, 2000))
            length = length_for_steps(count, DEFAULTS)
            back = steps_for_length(length, DEFAULTS.home_length_l0, DEFAULTS)
            assert back.steps == count


class TestStepOrder:
    def test_cap_enforced_at_construction(self):
        with pytest.raises(CapExceededError):
            StepOrder(1_000_001)

    def test_non_integer_rejected(self):
        with pytest.raises(ValueError):
            StepOrder(1.5)

    def test_custom_cap(self):
        assert StepOrder(2_000_000, cap=3_000_000).steps == 2_000_000


class TestTypeInvariants:
    def test_point_rejects_nan(self):
        with pytest.raises(ValueError):
            Point3(float("nan"), 0.0, 0.0)

    def test_anchorset_needs_three(self):
        with pytest.raises(ValueError):
            AnchorSet.from_coordinates([(0, 0, 0), (1, 0, 0)])

    def test_anchorset_rejects_coincident(self):
        with pytest.raises(ValueError):
            AnchorSet.from_coordinates([(0, 0, 0), (0, 0, 0), (1, 1, 0)])

    def test_anchorset_rejects_collinear(self):
        with pytest.raises(SingularGeometryError):
            AnchorSet.from_coordinates([(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0)])

    def test_three_anchors_allowed(self):
        anchors = AnchorSet.from_coordinates([(0, 0, 2), (2, 0, 2), (1, 2, 2)])
        assert len(anchors) == 3
        assert anchors.labels() == ["A", "B", "C"]

    def test_cable_lengths_reject_negative(self):
        with pytest.raises(ValueError):
            CableLengths((1.0, -0.1, 1.0, 1.0))

    def test_winch_params_validation(self):
        with pytest.raises(ValueError):
            WinchParams(drum_radius_r=0.0)
        with pytest.raises(ValueError):
            WinchParams(home_length_l0=-1.0)
        with pytest.raises(ValueError):
            WinchParams(steps_per_turn=0)


class TestWorkspace:
    def test_interior_point(self):
        anchors = square_anchors(side=120.0, height=150.0)
        assert workspace_contains(Point3(60.0, 60.0, 75.0), anchors)

    def test_outside_in_x(self):
        anchors = square_anchors(side=120.0, height=150.0)
        assert not workspace_contains(Point3(121.0, 60.0, 75.0), anchors)

    def test_face_is_inclusive(self):
        anchors = square_anchors(side=120.0, height=150.0)
        assert workspace_contains(Point3(120.0, 60.0, 75.0), anchors)
        assert workspace_contains(Point3(60.0, 60.0, 150.0), anchors)
        assert workspace_contains(Point3(60.0, 60.0, 0.0), anchors)

    def test_below_floor_excluded(self):
        anchors = square_anchors(side=120.0, height=150.0)
        assert not workspace_contains(Point3(60.0, 60.0, -0.001), anchors)

    def test_z_capped_at_lowest_coil(self):
        anchors = AnchorSet.from_coordinates(
            [(0, 0, 150), (120, 0, 140), (120, 120, 150), (0, 120, 150)])
        assert workspace_contains(Point3(60, 60, 140.0), anchors)
        assert not workspace_contains(Point3(60, 60, 140.1), anchors)

    def test_agrees_with_brute_force_box(self):
        rng = np.random.default_rng(23)
        anchors = AnchorSet.from_coordinates(
            [(10, -5, 90), (200, 0, 110), (190, 160, 95), (0, 150, 100)])
        xs, ys, zs = zip(*[(a.x, a.y, a.z) for a in anchors])
        for _ in range(10_000):
            p = Point3(*rng.uniform(-50, 250, size=3))
            expected = (min(xs) <= p.x <= max(xs)
                        and min(ys) <= p.y <= max(ys)
                        and 0.0 <= p.z <= min(zs))
            assert workspace_contains(p, anchors) == expected

    def test_bounds_shape(self):
        lo, hi = workspace_bounds(square_anchors(side=120.0, height=150.0))
        assert lo == (0.0, 0.0, 0.0)
        assert hi == (120.0, 120.0, 150.0)
