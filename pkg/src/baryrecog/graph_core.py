"""Planar graphs with rotation systems, face walks and the
external / internal / strictly-internal classification.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import geometry
from .errors import CrossingEdges, DegenerateAngles, EulerViolation, GeometryError, HullMismatch
from .geometry import DEFAULT_TOLERANCES, Tolerances

Edge = tuple[int, int]


def edge_key(i: int, j: int) -> Edge:
    """Canonical undirected key, ``edge_key(i, j) == edge_key(j, i)``."""
    return (i, j) if i < j else (j, i)


class VertexClass(str, Enum):
    EXTERNAL = "external"
    INTERNAL = "internal"


class EdgeClass(str, Enum):
    EXTERNAL = "external"
    INTERNAL = "internal"
    STRICTLY_INTERNAL = "strictly_internal"


@dataclass(frozen=True)
class PlanarGraph:
    """Simple undirected graph, optionally with a counter-clockwise rotation system."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    rotation: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise ValueError(f"adjacency has {len(self.adjacency)} rows for n={self.n}")
        for i, nbrs in enumerate(self.adjacency):
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"parallel edges at vertex {i}")
            for j in nbrs:
                if j == i:
                    raise ValueError(f"self-loop at vertex {i}")
                if not 0 <= j < self.n:
                    raise ValueError(f"vertex {i} has out-of-range neighbour {j}")
                if i not in self.adjacency[j]:
                    raise ValueError(f"adjacency is not symmetric for edge ({i}, {j})")
        if self.rotation is not None:
            for i, rot in enumerate(self.rotation):
                if sorted(rot) != sorted(self.adjacency[i]):
                    raise ValueError(f"rotation at vertex {i} is not a permutation of its neighbours")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], rotation=None) -> "PlanarGraph":
        adj: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for i, j in edges:
            i, j = int(i), int(j)
            key = edge_key(i, j)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            adj[i].append(j)
            adj[j].append(i)
        rot = None if rotation is None else tuple(tuple(r) for r in rotation)
        return cls(n, tuple(tuple(sorted(a)) for a in adj), rot)

    @cached_property
    def edges(self) -> list[Edge]:
        return sorted(edge_key(i, j) for i in range(self.n) for j in self.adjacency[i] if i < j)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def with_rotation(self, rotation) -> "PlanarGraph":
        return PlanarGraph(self.n, self.adjacency, tuple(tuple(r) for r in rotation))


def rotation_from_positions(adjacency, positions, eps_angle: float = geometry.EPS_ANGLE):
    """Sort every neighbour list counter-clockwise by angle, starting from angle 0."""
    pts = geometry.as_points(positions)
    rotation = []
    for i, nbrs in enumerate(adjacency):
        nbrs = list(nbrs)
        if not nbrs:
            rotation.append(())
            continue
        d = pts[nbrs] - pts[i]
        ang = np.mod(np.arctan2(d[:, 1], d[:, 0]), 2 * math.pi)
        order = np.argsort(ang, kind="stable")
        sorted_ang = ang[order]
        if len(nbrs) > 1:
            gaps = np.diff(np.append(sorted_ang, sorted_ang[0] + 2 * math.pi))
            if gaps.min() < eps_angle:
                k = int(np.argmin(gaps))
                a, b = nbrs[order[k]], nbrs[order[(k + 1) % len(nbrs)]]
                raise DegenerateAngles(f"neighbours {a} and {b} of vertex {i} subtend an angle < {eps_angle}")
        rotation.append(tuple(nbrs[k] for k in order))
    return tuple(rotation)


def extract_faces(rotation) -> list[list[int]]:
    """Walk every directed edge once; each walk keeps its face on the left.

    With counter-clockwise rotations, bounded faces come out counter-clockwise
    and the outer face clockwise.
    """
    n = len(rotation)
    pos = [{v: k for k, v in enumerate(rot)} for rot in rotation]
    visited: set[Edge] = set()
    faces = []
    m2 = 0
    for u in range(n):
        for v in rotation[u]:
            m2 += 1
            if (u, v) in visited:
                continue
            face = []
            a, b = u, v
            while (a, b) not in visited:
                visited.add((a, b))
                face.append(a)
                rot_b = rotation[b]
                c = rot_b[(pos[b][a] - 1) % len(rot_b)]
                a, b = b, c
            if (a, b) != (u, v):
                raise EulerViolation("face walk did not close on its starting edge")
            faces.append(face)
    m = m2 // 2
    if n - m + len(faces) != 2:
        raise EulerViolation(f"n - m + f = {n} - {m} + {len(faces)} != 2")
    return faces


def _same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b) or not a:
        return len(a) == len(b)
    if a[0] not in b:
        return False
    k = list(b).index(a[0])
    return list(a) == list(b[k:]) + list(b[:k])


def classify(outer_face: Iterable[int], graph: PlanarGraph):
    """Vertex and edge classes determined by membership in the outer face."""
    outer = set(outer_face)
    vertex_class = [VertexClass.EXTERNAL if i in outer else VertexClass.INTERNAL for i in range(graph.n)]
    edge_class = {}
    for i, j in graph.edges:
        k = (vertex_class[i] is VertexClass.INTERNAL) + (vertex_class[j] is VertexClass.INTERNAL)
        edge_class[(i, j)] = (EdgeClass.EXTERNAL, EdgeClass.INTERNAL, EdgeClass.STRICTLY_INTERNAL)[k]
    return vertex_class, edge_class


@dataclass
class EmbeddedDrawing:
    """A straight-line drawing together with its induced embedding.

    ``outer_face`` is counter-clockwise. ``faces`` holds every bounded face,
    counter-clockwise, exactly once.
    """

    graph: PlanarGraph
    positions: np.ndarray
    outer_face: list[int]
    faces: list[list[int]]
    vertex_class: list[VertexClass] = field(default_factory=list)
    edge_class: dict[Edge, EdgeClass] = field(default_factory=dict)

    def __post_init__(self):
        if not self.vertex_class:
            self.vertex_class, self.edge_class = classify(self.outer_face, self.graph)

    @property
    def n(self) -> int:
        return self.graph.n

    def is_internal(self, i: int) -> bool:
        return self.vertex_class[i] is VertexClass.INTERNAL

    @cached_property
    def internal_vertices(self) -> list[int]:
        return [i for i in range(self.n) if self.is_internal(i)]

    @cached_property
    def internal_edges(self) -> list[Edge]:
        return [e for e, c in self.edge_class.items() if c is not EdgeClass.EXTERNAL]

    @cached_property
    def strictly_internal_edges(self) -> list[Edge]:
        return [e for e, c in self.edge_class.items() if c is EdgeClass.STRICTLY_INTERNAL]

    @cached_property
    def strictly_internal_faces(self) -> list[int]:
        """Indices into ``faces`` of faces whose vertices are all internal."""
        return [k for k, f in enumerate(self.faces) if all(self.is_internal(v) for v in f)]

    @cached_property
    def diagonal(self) -> float:
        return geometry.bbox_diagonal(self.positions)

    def neighbours(self, i: int) -> tuple[int, ...]:
        """Counter-clockwise neighbour order of ``i``."""
        return self.graph.rotation[i]

    def edge_list(self) -> list[Edge]:
        return self.graph.edges


def embed(
    graph: PlanarGraph,
    positions,
    outer_face: Sequence[int] | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
    check_hull: bool = True,
) -> EmbeddedDrawing:
    """Derive the embedding of a straight-line drawing and classify it.

    The rotation system always comes from the coordinates. A rotation stored
    on ``graph`` or an explicit ``outer_face`` must agree with the derived one.
    Raises CrossingEdges, DegenerateAngles, EulerViolation or HullMismatch.
    """
    pts = geometry.as_points(positions)
    if len(pts) != graph.n:
        raise GeometryError(f"{len(pts)} positions for {graph.n} vertices")
    if not geometry.points_distinct(pts, tol.eps_geom):
        raise GeometryError("vertex positions are not pairwise distinct")
    pairs = geometry.crossing_pairs(pts, graph.edges)
    if pairs:
        raise CrossingEdges(f"{len(pairs)} crossing edge pair(s), first: {pairs[0]}")
    rotation = rotation_from_positions(graph.adjacency, pts, tol.eps_angle)
    if graph.rotation is not None:
        for i, (given, derived) in enumerate(zip(graph.rotation, rotation)):
            if not _same_cycle(given, derived):
                raise GeometryError(f"rotation at vertex {i} disagrees with the drawing")
    g = graph.with_rotation(rotation)
    walks = extract_faces(rotation)
    areas = [geometry.signed_area(pts[f]) for f in walks]
    outer_idx = [k for k, a in enumerate(areas) if a < 0]
    if len(outer_idx) != 1:
        raise GeometryError(f"expected exactly one clockwise face walk, found {len(outer_idx)}")
    walk_outer = walks[outer_idx[0]][::-1]
    if outer_face is not None and not _same_cycle(list(outer_face), walk_outer):
        if not _same_cycle(list(outer_face)[::-1], walk_outer):
            raise HullMismatch(f"given outer face {list(outer_face)} is not the unbounded face of the drawing")
    if check_hull:
        hull = geometry.convex_hull(pts, tol.eps_geom)
        if set(hull) != set(walk_outer):
            raise HullMismatch(
                f"outer face {sorted(walk_outer)} differs from convex hull vertices {sorted(hull)}"
            )
    # Start the outer cycle at its smallest vertex for deterministic output.
    k = walk_outer.index(min(walk_outer))
    walk_outer = walk_outer[k:] + walk_outer[:k]
    faces = [f for idx, f in enumerate(walks) if idx != outer_idx[0]]
    return EmbeddedDrawing(g, pts.copy(), walk_outer, faces)


@dataclass
class Forest:
    """DFS spanning forest of the internal vertices over strictly internal edges."""

    roots: list[int]
    parent: dict[int, int | None]
    order: list[int]
    depth: dict[int, int]

    def tree_edges(self) -> list[Edge]:
        return [(p, v) for v, p in self.parent.items() if p is not None]

    def component_of(self, v: int) -> int:
        while self.parent[v] is not None:
            v = self.parent[v]
        return v


def internal_subgraph_forest(drawing: EmbeddedDrawing, warn: bool = True) -> Forest:
    adj: dict[int, list[int]] = {v: [] for v in drawing.internal_vertices}
    for i, j in drawing.strictly_internal_edges:
        adj[i].append(j)
        adj[j].append(i)
    parent: dict[int, int | None] = {}
    depth: dict[int, int] = {}
    order: list[int] = []
    roots: list[int] = []
    for r in sorted(adj):
        if r in parent:
            continue
        roots.append(r)
        parent[r] = None
        depth[r] = 0
        stack = [r]
        while stack:
            v = stack.pop()
            order.append(v)
            for w in sorted(adj[v], reverse=True):
                if w not in parent:
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    stack.append(w)
    if warn and len(roots) > 1:
        warnings.warn(
            f"internal subgraph has {len(roots)} components; graph is probably not triconnected",
            RuntimeWarning,
            stacklevel=2,
        )
    return Forest(roots, parent, order, depth)
