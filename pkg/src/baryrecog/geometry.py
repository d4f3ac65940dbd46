"""Geometric predicates and convex-combination coordinates.

Tolerances are relative to the bounding-box diagonal of the points
involved: for hull and convexity tests a point closer than
``eps_geom * diag`` to a line is on it. Edge crossings are decided with
exact orientation signs on the input doubles instead, so a drawing that
is merely thin is not mistaken for one that touches.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from . import simplex
from .errors import CollinearNeighbours, GeometryError, OutsideHull

EPS_ANGLE = 1e-9
EPS_POS = 1e-9


@dataclass(frozen=True)
class Tolerances:
    eps_geom: float = 1e-9
    eps_cycle: float = 1e-7
    eps_residual: float = 1e-9
    eps_angle: float = EPS_ANGLE
    eps_pos: float = EPS_POS
    eps_lp: float = 1e-9

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0:
                raise ValueError(f"tolerance {name} must be strictly positive, got {value}")


DEFAULT_TOLERANCES = Tolerances()


class ConvexCoords(NamedTuple):
    """Coefficients expressing a point as a convex mix of its neighbours.

    ``base`` is one strictly positive solution; rows of ``nullspace`` form an
    orthonormal basis of all homogeneous solutions.
    """

    base: np.ndarray
    nullspace: np.ndarray


class Convexity(NamedTuple):
    convex: bool
    strict: bool


def as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise GeometryError(f"expected an (n, 2) array of points, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise GeometryError("point coordinates must be finite")
    return pts


def bbox_diagonal(points) -> float:
    pts = np.asarray(points, dtype=float)
    if len(pts) == 0:
        return 0.0
    span = pts.max(axis=0) - pts.min(axis=0)
    return float(math.hypot(span[0], span[1]))


def orient(a, b, c) -> float:
    """Twice the signed area of triangle abc (positive when counter-clockwise)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def signed_area(points) -> float:
    pts = np.asarray(points, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def convex_hull(points, eps_geom: float = DEFAULT_TOLERANCES.eps_geom) -> list[int]:
    """Indices of the strictly convex hull vertices, counter-clockwise.

    Andrew's monotone chain; points within ``eps_geom * diag`` of a hull
    edge are treated as collinear and dropped.
    """
    pts = as_points(points)
    if len(pts) < 3:
        return list(range(len(pts)))
    tol_dist = eps_geom * bbox_diagonal(pts)
    order = sorted(range(len(pts)), key=lambda i: (pts[i, 0], pts[i, 1]))

    def chain(indices):
        out: list[int] = []
        for i in indices:
            while len(out) >= 2 and orient(pts[out[-2]], pts[out[-1]], pts[i]) <= tol_dist * math.dist(
                pts[out[-2]], pts[i]
            ):
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def is_convex_polygon(points, eps_geom: float = DEFAULT_TOLERANCES.eps_geom) -> Convexity:
    """Check a cyclic polygon for convexity, in either orientation.

    ``convex`` is true when no turn goes the wrong way and the polygon winds
    exactly once; ``strict`` is additionally false when some triple of
    consecutive corners is collinear (within ``eps_geom``).
    """
    pts = as_points(points)
    k = len(pts)
    if k < 3:
        raise GeometryError("a polygon needs at least 3 points")
    prev = np.roll(pts, 1, axis=0)
    nxt = np.roll(pts, -1, axis=0)
    cross = (pts[:, 0] - prev[:, 0]) * (nxt[:, 1] - pts[:, 1]) - (pts[:, 1] - prev[:, 1]) * (
        nxt[:, 0] - pts[:, 0]
    )
    # |cross| / longer edge is the distance of the other endpoint from that edge's line.
    longest = np.maximum(np.linalg.norm(pts - prev, axis=1), np.linalg.norm(nxt - pts, axis=1))
    thresh = eps_geom * bbox_diagonal(pts) * longest
    flat = np.abs(cross) <= thresh
    pos = np.any(cross > thresh)
    neg = np.any(cross < -thresh)
    if pos and neg:
        return Convexity(False, False)
    if not (pos or neg):
        return Convexity(False, False)
    # Consistent turning also holds for star polygons; require winding number one.
    e_in = pts - prev
    e_out = nxt - pts
    turn = np.arctan2(
        e_in[:, 0] * e_out[:, 1] - e_in[:, 1] * e_out[:, 0],
        e_in[:, 0] * e_out[:, 0] + e_in[:, 1] * e_out[:, 1],
    )
    if abs(abs(turn.sum()) - 2 * math.pi) > 1e-6:
        return Convexity(False, False)
    return Convexity(True, not bool(flat.any()))


# Shewchuk's static error bound for the 2x2 orientation determinant.
_ORIENT_ERRBOUND = 3.3306690738754716e-16


def orient_sign(a, b, c) -> np.ndarray:
    """Exact sign of ``orient(a, b, c)`` for rows of float arrays.

    The floating-point determinant is trusted whenever it exceeds its
    rounding-error bound; the remaining (near-degenerate) rows are
    re-evaluated in rational arithmetic on the input doubles.
    """
    a, b, c = (np.atleast_2d(np.asarray(v, dtype=float)) for v in (a, b, c))
    left = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
    right = (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
    det = left - right
    sign = np.sign(det).astype(int)
    unsure = np.abs(det) <= _ORIENT_ERRBOUND * (np.abs(left) + np.abs(right))
    for r in np.nonzero(unsure)[0].tolist():
        ax, ay, bx, by, cx, cy = (Fraction(float(v)) for v in (*a[r], *b[r], *c[r]))
        exact = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        sign[r] = (exact > 0) - (exact < 0)
    return sign


def segment_pairs_intersect(p1, p2, q1, q2) -> np.ndarray:
    """Exact closed-segment intersection test for arrays of segment pairs."""
    d1 = orient_sign(q1, q2, p1)
    d2 = orient_sign(q1, q2, p2)
    d3 = orient_sign(p1, p2, q1)
    d4 = orient_sign(p1, p2, q2)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)

    def on_segment(a, b, c):
        # c collinear with ab: within the bounding box of ab?
        return np.all((c >= np.minimum(a, b)) & (c <= np.maximum(a, b)), axis=1)

    touch = (
        ((d1 == 0) & on_segment(q1, q2, p1))
        | ((d2 == 0) & on_segment(q1, q2, p2))
        | ((d3 == 0) & on_segment(p1, p2, q1))
        | ((d4 == 0) & on_segment(p1, p2, q2))
    )
    return proper | touch


def crossing_pairs(positions, edges):
    """All pairs of non-adjacent edges whose closed segments meet (exact predicates)."""
    pts = as_points(positions)
    E = np.asarray(edges, dtype=int).reshape(-1, 2)
    m = len(E)
    if m < 2:
        return []
    ii, jj = np.triu_indices(m, k=1)
    a, b = E[ii], E[jj]
    disjoint = (a[:, 0] != b[:, 0]) & (a[:, 0] != b[:, 1]) & (a[:, 1] != b[:, 0]) & (a[:, 1] != b[:, 1])
    ii, jj = ii[disjoint], jj[disjoint]
    hits = []
    chunk = 1 << 18
    for start in range(0, len(ii), chunk):
        si, sj = ii[start : start + chunk], jj[start : start + chunk]
        mask = segment_pairs_intersect(pts[E[si, 0]], pts[E[si, 1]], pts[E[sj, 0]], pts[E[sj, 1]])
        hits.extend(zip(si[mask].tolist(), sj[mask].tolist()))
    return [(tuple(int(v) for v in E[i]), tuple(int(v) for v in E[j])) for i, j in hits]


def crossing_free(positions, edges) -> bool:
    """True iff no two edges without a common endpoint share a point."""
    return not crossing_pairs(positions, edges)


def barycentric_deg3(p, a, b, c, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Unique barycentric coordinates of ``p`` with respect to triangle abc."""
    p, a, b, c = (np.asarray(v, dtype=float) for v in (p, a, b, c))
    diag = bbox_diagonal(np.stack([p, a, b, c]))
    area2 = orient(a, b, c)
    if abs(area2) <= tol.eps_geom * diag**2:
        raise CollinearNeighbours(f"neighbours {a}, {b}, {c} are collinear")
    z = np.array([orient(p, b, c), orient(a, p, c), orient(a, b, p)]) / area2
    if np.any(z <= tol.eps_pos):
        raise OutsideHull(f"point {p} is not strictly inside its neighbours' triangle (z={z})")
    return z


def _max_min_combination(p, nbrs, eps_pos):
    """Maximise the smallest coefficient of a convex combination equal to ``p``.

    Variables: z = u + t, u >= 0, t >= 0. Centred at ``p`` so the affine
    constraint becomes homogeneous apart from the sum-to-one row.
    """
    d = len(nbrs)
    rel = nbrs - p
    scale = max(float(np.abs(rel).max()), 1e-300)
    rel = rel / scale
    A = np.zeros((3, d + 1))
    A[0, :d] = 1.0
    A[0, d] = d
    A[1:, :d] = rel.T
    A[1:, d] = rel.sum(axis=0)
    b = np.array([1.0, 0.0, 0.0])
    c = np.zeros(d + 1)
    c[d] = 1.0
    res = simplex.maximize(c, A, b)
    if res.status != simplex.OPTIMAL or res.x[d] <= eps_pos:
        raise OutsideHull(f"point {p} is not strictly inside the hull of its neighbours")
    z = res.x[:d] + res.x[d]
    # Project back onto the affine constraints; the LP answer is exact up to pivot roundoff.
    M = np.vstack([np.ones(d), rel.T])
    z = z - np.linalg.pinv(M) @ (M @ z - np.array([1.0, 0.0, 0.0]))
    return z


def convex_coords_general(p, neighbours, tol: Tolerances = DEFAULT_TOLERANCES) -> ConvexCoords:
    """Convex-combination coordinates of ``p`` over an arbitrary neighbour set."""
    p = np.asarray(p, dtype=float)
    nbrs = as_points(neighbours)
    d = len(nbrs)
    if d < 3:
        raise OutsideHull(f"a vertex with {d} neighbours cannot be strictly inside their hull")
    if d == 3:
        return ConvexCoords(barycentric_deg3(p, *nbrs, tol=tol), np.zeros((0, 3)))
    z = _max_min_combination(p, nbrs, tol.eps_pos)
    M = np.vstack([np.ones(d), (nbrs - p).T])
    _, sv, vt = np.linalg.svd(M)
    rank = int(np.sum(sv > 1e-12 * sv[0]))
    if rank < 3:
        raise CollinearNeighbours(f"neighbours of {p} are collinear")
    return ConvexCoords(z, vt[rank:].copy())


def combination_residual(p, neighbours, z) -> float:
    """Max of |sum z - 1| and |sum z_j q_j - p| / diag."""
    nbrs = as_points(neighbours)
    p = np.asarray(p, dtype=float)
    diag = bbox_diagonal(np.vstack([nbrs, p[None]])) or 1.0
    return max(abs(float(np.sum(z)) - 1.0), float(np.abs(z @ nbrs - p).max()) / diag)


def points_distinct(points, eps_geom: float = DEFAULT_TOLERANCES.eps_geom) -> bool:
    pts = as_points(points)
    if len(pts) < 2:
        return True
    return len(cKDTree(pts).query_pairs(eps_geom * bbox_diagonal(pts))) == 0
