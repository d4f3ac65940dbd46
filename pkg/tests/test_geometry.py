import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from baryrecog import geometry
from baryrecog.errors import CollinearNeighbours, OutsideHull
from baryrecog.geometry import Tolerances


def test_tolerances_must_be_positive():
    with pytest.raises(ValueError):
        Tolerances(eps_cycle=0.0)


def test_unit_square_is_convex():
    sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert geometry.is_convex_polygon(sq) == (True, True)


def test_dart_is_not_convex():
    dart = [(0, 0), (2, 0), (1, 1), (2, 2)]
    assert geometry.is_convex_polygon(dart).convex is False


def test_collinear_subdivision_point_is_convex_but_not_strictly():
    tri = [(0, 0), (1, 0), (2, 0), (1, 2)]
    res = geometry.is_convex_polygon(tri)
    assert res.convex and not res.strict


def test_clockwise_square_reads_as_convex():
    assert geometry.is_convex_polygon([(0, 0), (0, 1), (1, 1), (1, 0)]).convex


def test_star_pentagon_is_not_convex():
    # Consistent turning direction but winding twice around.
    pts = [(math.cos(a), math.sin(a)) for a in np.radians(90 + 144 * np.arange(5))]
    assert not geometry.is_convex_polygon(pts).convex


K4_EDGES = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]


def test_k4_hub_inside_is_crossing_free():
    pos = [(0, 0), (4, 0), (2, 4), (2, 1)]
    assert geometry.crossing_free(pos, K4_EDGES)


def test_k4_hub_outside_crosses():
    pos = [(0, 0), (4, 0), (2, 4), (2, -3)]
    assert not geometry.crossing_free(pos, K4_EDGES)


def test_segments_sharing_an_interior_point_cross():
    # A T-junction: endpoint of one segment lies inside the other.
    pos = [(0, 0), (2, 0), (1, 0), (1, 1)]
    assert not geometry.crossing_free(pos, [(0, 1), (2, 3)])


def test_thin_but_disjoint_segments_do_not_cross():
    # Separated by far less than any relative tolerance, yet disjoint.
    pos = [(0.0, 0.0), (1.0, 0.0), (0.2, 1e-12), (0.8, 1e-12)]
    assert geometry.crossing_free(pos, [(0, 1), (2, 3)])


def test_orient_sign_exact_on_near_degenerate_input():
    a, b = np.array([[0.1, 0.1]]), np.array([[0.3, 0.3]])
    c = np.array([[0.2, np.nextafter(0.2, 1.0)]])
    assert geometry.orient_sign(a, b, c)[0] == 1
    assert geometry.orient_sign(a, b, np.array([[0.5, 0.5]]))[0] == 0


def test_barycentric_centroid():
    z = geometry.barycentric_deg3((0, 0), (1, 0), (0, 1), (-1, -1))
    assert z == pytest.approx([1 / 3, 1 / 3, 1 / 3], abs=1e-15)


def test_barycentric_symmetric_solve():
    z = geometry.barycentric_deg3((0.5, 0), (1, 0), (0, 1), (0, -1))
    assert z == pytest.approx([0.5, 0.25, 0.25], abs=1e-15)


def test_barycentric_collinear_neighbours():
    with pytest.raises(CollinearNeighbours):
        geometry.barycentric_deg3((0.5, 0.1), (0, 0), (1, 0), (2, 0))


def test_barycentric_outside_triangle():
    with pytest.raises(OutsideHull):
        geometry.barycentric_deg3((3, 3), (1, 0), (0, 1), (-1, -1))


def test_general_degree_three_delegates():
    cc = geometry.convex_coords_general((0, 0), [(1, 0), (0, 1), (-1, -1)])
    assert cc.nullspace.shape == (0, 3)
    assert cc.base == pytest.approx([1 / 3, 1 / 3, 1 / 3])


def test_general_degree_four_cross():
    nbrs = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    cc = geometry.convex_coords_general((0, 0), nbrs)
    assert cc.base == pytest.approx([0.25] * 4, abs=1e-12)
    assert cc.nullspace.shape == (1, 4)
    # Hand-solved: the kernel of [[1,0,-1,0],[0,1,0,-1],[1,1,1,1]] is (1,-1,1,-1)/2.
    v = cc.nullspace[0] * np.sign(cc.nullspace[0][0])
    assert v == pytest.approx(np.array([1, -1, 1, -1]) / 2, abs=1e-12)
    assert geometry.combination_residual((0, 0), nbrs, cc.base) <= 1e-15


def test_general_point_outside_hull():
    with pytest.raises(OutsideHull):
        geometry.convex_coords_general((5, 5), [(1, 0), (0, 1), (-1, 0), (0, -1)])


def test_convex_hull_ccw_without_collinear_points():
    pts = [(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
    hull = geometry.convex_hull(pts)
    assert sorted(hull) == [0, 2, 3, 4]
    assert geometry.signed_area(np.asarray(pts, float)[hull]) > 0


def _fan(seed, degree):
    rng = np.random.default_rng(seed)
    # Keep consecutive gaps below pi so the origin is strictly inside.
    ang = np.linspace(0, 2 * np.pi, degree, endpoint=False) + rng.uniform(-0.2, 0.2, degree) * (2 * np.pi / degree)
    r = rng.uniform(0.5, 2.0, degree)
    return np.column_stack([r * np.cos(ang), r * np.sin(ang)])


@given(st.integers(0, 10_000), st.integers(3, 9))
def test_convex_coords_reproduce_the_point(seed, degree):
    nbrs = _fan(seed, degree)
    p = np.zeros(2)
    cc = geometry.convex_coords_general(p, nbrs)
    assert abs(cc.base.sum() - 1.0) <= 1e-12
    assert np.linalg.norm(cc.base @ nbrs - p) <= 1e-12 * np.abs(nbrs).max()
    assert cc.base.min() > 0
    assert cc.nullspace.shape == (degree - 3, degree)


@given(st.integers(0, 10_000), st.integers(4, 9))
def test_nullspace_moves_preserve_constraints(seed, degree):
    nbrs = _fan(seed, degree)
    cc = geometry.convex_coords_general((0.0, 0.0), nbrs)
    rng = np.random.default_rng(seed)
    d = rng.standard_normal(cc.nullspace.shape[0]) @ cc.nullspace
    neg = d < 0
    step = 0.5 * np.min(cc.base[neg] / -d[neg]) if neg.any() else 1.0
    z = cc.base + step * d
    assert z.min() > 0
    assert abs(z.sum() - 1.0) <= 1e-12
    assert np.linalg.norm(z @ nbrs) <= 1e-12 * np.abs(nbrs).max()


@given(
    st.integers(0, 10_000),
    st.floats(-10, 10),
    st.floats(-10, 10),
    st.floats(0, 2 * math.pi),
)
def test_barycentric_invariant_under_rigid_motion(seed, dx, dy, angle):
    rng = np.random.default_rng(seed)
    tri = _fan(seed, 3)
    w = rng.dirichlet([1, 1, 1]) * 0.9 + 0.1 / 3
    p = w @ tri
    z0 = geometry.barycentric_deg3(p, *tri)
    R = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    moved = [R @ q + (dx, dy) for q in (p, *tri)]
    z1 = geometry.barycentric_deg3(*moved)
    assert z1 == pytest.approx(z0, abs=1e-10)
