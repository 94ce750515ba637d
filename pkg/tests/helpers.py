"""Shared generators for geometry tests."""

import math

import numpy as np

from cablebot import AnchorSet, InterDistanceSet, Point3


def square_anchors(side=2.0, height=2.0):
    return AnchorSet.from_coordinates([
        (0.0, 0.0, height),
        (side, 0.0, height),
        (side, side, height),
        (0.0, side, height),
    ])


def distances_between(points):
    """InterDistanceSet computed from four planar (x, y, z) points."""
    (ax, ay, az), b, c, dd = [tuple(p) for p in points]
    pts = [(ax, ay), (b[0], b[1]), (c[0], c[1]), (dd[0], dd[1])]

    def dist(i, j):
        return math.dist(pts[i], pts[j])

    return InterDistanceSet(
        d_ab=dist(0, 1), d_ac=dist(0, 2), d_ad=dist(0, 3),
        d_bc=dist(1, 2), d_bd=dist(1, 3), d_cd=dist(2, 3),
        plane_height=az,
    )


def random_planar_layout(rng, span=300.0, height=200.0,
                         min_separation=20.0, min_baseline_offset=5.0):
    """Four well-conditioned coil positions in a horizontal plane.

    Rejection-samples until all pairwise separations exceed
    ``min_separation`` and both C and D sit at least
    ``min_baseline_offset`` away from the A-B line, so the circle
    intersections stay well conditioned.
    """
    while True:
        pts = rng.uniform(0.0, span, size=(4, 2))
        seps = [np.linalg.norm(pts[i] - pts[j])
                for i in range(4) for j in range(i + 1, 4)]
        if min(seps) < min_separation:
            continue
        ab = pts[1] - pts[0]
        ab_len = np.linalg.norm(ab)

        def baseline_offset(q):
            return abs(ab[0] * (q[1] - pts[0][1]) - ab[1] * (q[0] - pts[0][0])) / ab_len

        off_c = baseline_offset(pts[2])
        off_d = baseline_offset(pts[3])
        if min(off_c, off_d) < min_baseline_offset:
            continue
        return [(float(x), float(y), height) for x, y in pts]


def random_point_in(rng, lo, hi):
    return Point3(*(rng.uniform(a, b) for a, b in zip(lo, hi)))
