"""Forward kinematics: Gauss-Newton solve, mirror handling, Jacobian."""

import math

import numpy as np
import pytest

from cablebot import (
    AnchorSet,
    CableLengths,
    Point3,
    cable_lengths_for_position,
    length_jacobian,
    solve_platform_position,
)
from cablebot.errors import NotConvergedError
from helpers import random_point_in, square_anchors


def test_round_trip_square_rig():
    anchors = square_anchors()
    lengths = CableLengths((math.sqrt(6),) * 4)
    sol = solve_platform_position(lengths, anchors)
    assert sol.converged
    assert sol.residual <= 1e-6
    assert sol.position.distance_to(Point3(1, 1, 0)) < 1e-6


def test_mirror_rejected_without_hint():
    # (1, 1, 4) fits the same lengths but lies above the coil plane
    anchors = square_anchors()
    lengths = cable_lengths_for_position(Point3(1, 1, 0), anchors)
    sol = solve_platform_position(lengths, anchors)
    assert sol.position.z < 2.0


def test_hint_selects_upper_branch():
    anchors = square_anchors()
    lengths = cable_lengths_for_position(Point3(1, 1, 0), anchors)
    sol = solve_platform_position(lengths, anchors, hint=Point3(1, 1, 5))
    assert sol.position.distance_to(Point3(1, 1, 4)) < 1e-6


def test_all_zero_lengths_cannot_converge():
    with pytest.raises(NotConvergedError) as exc_info:
        solve_platform_position(CableLengths((0.0,) * 4), square_anchors())
    assert exc_info.value.residual > 1.0


def test_perturbed_length_reported_infeasible():
    anchors = square_anchors()
    lengths = cable_lengths_for_position(Point3(1, 1, 0), anchors)
    perturbed = CableLengths((lengths[0] + 10.0,) + lengths.lengths[1:])

    # oracle: dense grid over the workspace box confirms no point fits the
    # perturbed lengths anywhere near tolerance
    grid = np.linspace(-1.0, 3.0, 33)
    target = perturbed.as_array()
    coords = anchors.as_array()
    best = math.inf
    for x in grid:
        for y in grid:
            for z in grid:
                d = np.linalg.norm([x, y, z] - coords, axis=1)
                best = min(best, math.sqrt(np.mean((d - target) ** 2)))
    assert best > 1e-3

    with pytest.raises(NotConvergedError) as exc_info:
        solve_platform_position(perturbed, anchors)
    assert exc_info.value.residual > 1e-3


def test_best_effort_solution_when_not_raising():
    sol = solve_platform_position(CableLengths((0.0,) * 4), square_anchors(),
                                  raise_on_failure=False)
    assert not sol.converged
    assert sol.residual > 1.0
    # the best effort is still the least-squares center of the rig
    assert sol.position.distance_to(Point3(1, 1, 2)) < 1e-3


def test_length_count_must_match_anchor_count():
    with pytest.raises(ValueError):
        solve_platform_position(CableLengths((1.0, 1.0, 1.0)), square_anchors())


def test_round_trip_random_poses_coplanar():
    rng = np.random.default_rng(29)
    anchors = square_anchors(side=120.0, height=150.0)
    for _ in range(200):
        p = random_point_in(rng, (0, 0, 0), (120, 120, 150))
        sol = solve_platform_position(cable_lengths_for_position(p, anchors),
                                      anchors)
        assert sol.converged
        assert sol.position.distance_to(p) <= 1e-6


def test_round_trip_non_coplanar_anchors():
    rng = np.random.default_rng(31)
    anchors = AnchorSet.from_coordinates(
        [(0, 0, 150), (120, 0, 165), (120, 120, 140), (0, 120, 155)])
    for _ in range(100):
        p = random_point_in(rng, (10, 10, 10), (110, 110, 120))
        sol = solve_platform_position(cable_lengths_for_position(p, anchors),
                                      anchors)
        assert sol.converged
        assert sol.position.distance_to(p) <= 1e-6


def test_returned_z_never_above_coplanar_rig():
    # even when the lengths were generated from a pose above the plane
    rng = np.random.default_rng(37)
    anchors = square_anchors(side=120.0, height=150.0)
    for _ in range(100):
        above = rng.random() < 0.5
        z = rng.uniform(151.0, 200.0) if above else rng.uniform(0.0, 149.0)
        p = Point3(float(rng.uniform(10, 110)), float(rng.uniform(10, 110)), float(z))
        sol = solve_platform_position(cable_lengths_for_position(p, anchors),
                                      anchors)
        assert sol.position.z <= 150.0 + 1e-9


def test_three_cable_rig_solvable():
    anchors = AnchorSet.from_coordinates([(0, 0, 100), (80, 0, 100), (40, 70, 100)])
    p = Point3(40.0, 25.0, 30.0)
    sol = solve_platform_position(cable_lengths_for_position(p, anchors), anchors)
    assert sol.converged
    assert sol.position.distance_to(p) <= 1e-6


class TestLengthJacobian:
    def test_matches_central_differences(self):
        rng = np.random.default_rng(41)
        anchors = square_anchors(side=120.0, height=150.0)
        step = 1e-5
        for _ in range(100):
            p = random_point_in(rng, (5, 5, 5), (115, 115, 145))
            analytic = length_jacobian(p, anchors)
            fd = np.empty_like(analytic)
            base = p.as_array()
            for axis in range(3):
                offset = np.zeros(3)
                offset[axis] = step
                hi = cable_lengths_for_position(Point3.from_array(base + offset),
                                                anchors).as_array()
                lo = cable_lengths_for_position(Point3.from_array(base - offset),
                                                anchors).as_array()
                fd[:, axis] = (hi - lo) / (2.0 * step)
            rel = np.linalg.norm(analytic - fd) / np.linalg.norm(analytic)
            assert rel <= 1e-4

    def test_rows_are_unit_vectors(self):
        anchors = square_anchors()
        jac = length_jacobian(Point3(0.3, 1.2, 0.7), anchors)
        assert np.allclose(np.linalg.norm(jac, axis=1), 1.0, atol=1e-12)

    def test_zero_row_at_anchor(self):
        anchors = square_anchors()
        jac = length_jacobian(anchors[0], anchors)
        assert np.all(jac[0] == 0.0)
