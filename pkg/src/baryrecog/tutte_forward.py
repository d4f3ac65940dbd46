"""Weighted barycenter (Tutte) drawing: pin the outer polygon, solve for the rest."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import geometry
from .errors import BaryRecogError, SingularSystem
from .geometry import DEFAULT_TOLERANCES, Tolerances
from .graph_core import Edge, PlanarGraph, edge_key, embed

WeightFunction = dict  # canonical edge key -> positive weight


def unit_weights(graph: PlanarGraph, outer: Sequence[int]) -> WeightFunction:
    outer_set = set(outer)
    return {e: 1.0 for e in graph.edges if not (e[0] in outer_set and e[1] in outer_set)}


def _weight(weights: Mapping[Edge, float], i: int, j: int) -> float:
    try:
        return weights[edge_key(i, j)]
    except KeyError:
        raise BaryRecogError(f"no weight for internal edge {edge_key(i, j)}") from None


def solve_barycenter(
    graph: PlanarGraph,
    weights: Mapping[Edge, float],
    outer_polygon: Sequence[tuple[int, Sequence[float]]],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Place every internal vertex at the weighted barycenter of its neighbours.

    ``outer_polygon`` is a sequence of ``(vertex, (x, y))`` pairs, strictly
    convex and counter-clockwise. Returns an ``(n, 2)`` array of positions;
    outer vertices are copied verbatim.

    The x and y systems share one dense matrix (the Laplacian restricted to
    internal vertices) and are solved together by LU with partial pivoting.
    """
    outer_ids = [int(v) for v, _ in outer_polygon]
    outer_pts = geometry.as_points([p for _, p in outer_polygon])
    if len(set(outer_ids)) != len(outer_ids) or len(outer_ids) < 3:
        raise BaryRecogError("outer polygon needs at least 3 distinct vertices")
    conv = geometry.is_convex_polygon(outer_pts, tol.eps_geom)
    if not (conv.convex and conv.strict) or geometry.signed_area(outer_pts) <= 0:
        raise BaryRecogError("outer polygon must be strictly convex and counter-clockwise")

    n = graph.n
    positions = np.zeros((n, 2))
    is_outer = np.zeros(n, dtype=bool)
    is_outer[outer_ids] = True
    positions[outer_ids] = outer_pts
    internal = [i for i in range(n) if not is_outer[i]]
    index = {v: k for k, v in enumerate(internal)}
    k = len(internal)
    if k == 0:
        return positions

    L = np.zeros((k, k))
    rhs = np.zeros((k, 2))
    for i in internal:
        row = index[i]
        for j in graph.adjacency[i]:
            w = _weight(weights, i, j)
            if not w > 0:
                raise SingularSystem(f"weight on edge {edge_key(i, j)} is not positive")
            L[row, row] += w
            if is_outer[j]:
                rhs[row] += w * positions[j]
            else:
                L[row, index[j]] -= w
    try:
        sol = np.linalg.solve(L, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"barycenter system is singular: {exc}") from exc
    # Singular-but-not-detected systems show up as huge residuals or non-finite values.
    if not np.all(np.isfinite(sol)) or np.abs(L @ sol - rhs).max() > 1e-8 * max(1.0, np.abs(rhs).max()):
        raise SingularSystem("barycenter system is numerically singular (disconnected interior?)")
    positions[internal] = sol
    return positions


def barycenter_residual(graph: PlanarGraph, weights: Mapping[Edge, float], positions, outer) -> float:
    """Largest barycenter defect over internal vertices, relative to the bounding-box diagonal."""
    pts = np.asarray(positions, dtype=float)
    outer_set = set(outer)
    diag = geometry.bbox_diagonal(pts) or 1.0
    worst = 0.0
    for i in range(graph.n):
        if i in outer_set:
            continue
        nbrs = list(graph.adjacency[i])
        w = np.array([_weight(weights, i, j) for j in nbrs])
        target = w @ pts[nbrs] / w.sum()
        worst = max(worst, float(np.abs(target - pts[i]).max()) / diag)
    return worst


@dataclass
class TutteReport:
    crossing_free: bool
    faces_convex: bool
    nonconvex_faces: list[list[int]] = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.crossing_free and self.faces_convex


def verify_tutte_output(
    graph: PlanarGraph, positions, outer_face: Sequence[int], tol: Tolerances = DEFAULT_TOLERANCES
) -> TutteReport:
    """Check the planarity-and-convexity guarantee on a forward-solved drawing.

    A failing report on a genuine forward output means a bug, not a property
    of the input.
    """
    pts = geometry.as_points(positions)
    if not geometry.crossing_free(pts, graph.edges):
        return TutteReport(False, False, error="edges cross")
    try:
        drawing = embed(graph, pts, outer_face, tol)
    except BaryRecogError as exc:
        return TutteReport(True, False, error=str(exc))
    bad = [f for f in drawing.faces if not geometry.is_convex_polygon(pts[f], tol.eps_geom).convex]
    return TutteReport(True, not bad, bad)
