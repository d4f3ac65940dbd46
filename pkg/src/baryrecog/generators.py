"""Seeded instance families.

Randomness comes from ``numpy.random.default_rng(seed)``, i.e. the PCG64
bit generator seeded through ``SeedSequence(seed)``; the same seed always
yields the same document.

Families:

* ``prism(k, r, twist)``: outer regular k-gon of circumradius 1 with a
  vertex at 90 degrees, inner regular k-gon of circumradius ``r`` rotated by
  ``twist`` degrees, joined by k spokes. Cubic.
* ``wheel(k)``: hub at the origin inside a regular k-gon.
* ``halin(seed)``: random plane tree without degree-2 vertices, leaves
  on the unit circle, interior drawn by a forward solve with random
  weights.
* ``stacked(seed, n)``: triangulation grown by inserting a vertex at the
  centroid of a random triangle, optionally redrawn by a forward solve.
* ``nested_rotated(twist, r)``: the twisted nested-triangle drawing, i.e.
  ``prism(3, r, twist)`` with ``r = 0.25`` by default.
* ``nested_hub(twist, r)``: ``nested_rotated`` plus a hub at the centre
  joined to the three inner vertices, which then have degree 4. Twisting
  the inner triangle and hub together keeps every strictly internal edge
  length, so like ``nested_rotated`` it is a reject fixture for twist > 0.
* ``antiprism(k)``: octahedron-like; every inner vertex has degree 4.
* ``cubic_dual(seed, n)``: planar dual of a stacked triangulation, a
  random triconnected cubic graph, forward-drawn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .documents import DrawingDocument
from .errors import BadParameters, BaryRecogError
from .geometry import DEFAULT_TOLERANCES
from .graph_core import PlanarGraph, edge_key, embed
from .tutte_forward import solve_barycenter

NESTED_DEFAULT_RADIUS = 0.25
FAMILIES = ("prism", "wheel", "halin", "stacked", "nested_rotated", "nested_hub", "antiprism", "cubic_dual")


def regular_polygon(k: int, radius: float = 1.0, phase_deg: float = 90.0) -> np.ndarray:
    ang = np.radians(phase_deg + 360.0 * np.arange(k) / k)
    return radius * np.column_stack([np.cos(ang), np.sin(ang)])


def log_uniform_weights(edges, rng: np.random.Generator, low: float = 0.1, high: float = 10.0) -> dict:
    vals = np.exp(rng.uniform(math.log(low), math.log(high), size=len(edges)))
    return {edge_key(*e): float(w) for e, w in zip(edges, vals)}


def internal_edge_list(edges, outer) -> list:
    outer_set = set(outer)
    return sorted(edge_key(*e) for e in edges if not (e[0] in outer_set and e[1] in outer_set))


def forward_redraw(doc: DrawingDocument, rng: np.random.Generator | None = None, weights=None) -> DrawingDocument:
    """Redraw the interior by a forward solve, with log-uniform [0.1, 10] weights by default."""
    if doc.outer_face is None:
        raise BadParameters("forward redraw needs an outer face")
    internal = internal_edge_list(doc.edges, doc.outer_face)
    if weights is None:
        weights = log_uniform_weights(internal, rng if rng is not None else np.random.default_rng(0))
    graph = doc.graph()
    pos = solve_barycenter(graph, weights, [(v, doc.positions[v]) for v in doc.outer_face])
    return DrawingDocument(pos, doc.edges, list(doc.outer_face), dict(weights))


def prism(k: int = 3, r: float = 0.25, twist: float = 0.0) -> DrawingDocument:
    if k < 3 or not 0 < r < 1:
        raise BadParameters(f"prism needs k >= 3 and 0 < r < 1, got k={k}, r={r}")
    pos = np.vstack([regular_polygon(k), regular_polygon(k, r, 90.0 + twist)])
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return DrawingDocument(pos, edges, list(range(k)))


def nested_rotated(twist: float = 20.0, r: float = NESTED_DEFAULT_RADIUS) -> DrawingDocument:
    return prism(3, r, twist)


def nested_hub(twist: float = 20.0, r: float = NESTED_DEFAULT_RADIUS) -> DrawingDocument:
    base = prism(3, r, twist)
    pos = np.vstack([base.positions, [[0.0, 0.0]]])
    return DrawingDocument(pos, base.edges + [(3, 6), (4, 6), (5, 6)], base.outer_face)


def wheel(k: int = 5) -> DrawingDocument:
    if k < 3:
        raise BadParameters("wheel needs k >= 3")
    pos = np.vstack([regular_polygon(k), [[0.0, 0.0]]])
    edges = [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)]
    return DrawingDocument(pos, edges, list(range(k)))


def antiprism(k: int = 3, r: float = 0.4) -> DrawingDocument:
    """Outer k-gon, inner k-gon offset by half a step; k=3 is the octahedron."""
    if k < 3 or not 0 < r < 1:
        raise BadParameters("antiprism needs k >= 3 and 0 < r < 1")
    pos = np.vstack([regular_polygon(k), regular_polygon(k, r, 90.0 + 180.0 / k)])
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)] + [((i + 1) % k, k + i) for i in range(k)]
    return DrawingDocument(pos, edges, list(range(k)))


def _random_halin_tree(rng: np.random.Generator, internal: int, max_children: int):
    """Plane tree as child lists; root has 3 children, other internal nodes 2..max_children."""
    children: dict[int, list[int]] = {0: [1, 2, 3]}
    leaves = [1, 2, 3]
    nxt = 4
    for _ in range(internal - 1):
        leaf = leaves.pop(int(rng.integers(len(leaves))))
        c = int(rng.integers(2, max_children + 1))
        children[leaf] = list(range(nxt, nxt + c))
        leaves.extend(children[leaf])
        nxt += c
    return children, nxt


def halin(seed: int = 0, internal: int | None = None, max_children: int = 3, forward: bool = True) -> DrawingDocument:
    """Random Halin graph; ``max_children=2`` makes it cubic."""
    rng = np.random.default_rng(seed)
    if internal is None:
        internal = int(rng.integers(2, 9))
    if internal < 1 or max_children < 2:
        raise BadParameters("halin needs internal >= 1 and max_children >= 2")
    children, n = _random_halin_tree(rng, internal, max_children)
    edges = [(p, c) for p, cs in children.items() for c in cs]
    order = []

    def walk(v):
        if v not in children:
            order.append(v)
            return
        for c in children[v]:
            walk(c)

    walk(0)
    # Relabel so the leaf cycle is 0..L-1 (counter-clockwise), tree nodes after.
    relabel = {v: k for k, v in enumerate(order)}
    for v in range(n):
        if v not in relabel:
            relabel[v] = len(relabel)
    L = len(order)
    edges = [(relabel[a], relabel[b]) for a, b in edges] + [(i, (i + 1) % L) for i in range(L)]
    pos = np.zeros((n, 2))
    pos[:L] = regular_polygon(L)
    doc = DrawingDocument(pos, edges, list(range(L)))
    if not forward:
        # Plain (unit-weight) barycenter placement of the tree.
        return forward_redraw(doc, weights={e: 1.0 for e in internal_edge_list(edges, range(L))})
    return forward_redraw(doc, rng)


def _stacked_structure(rng: np.random.Generator, n: int):
    pos = [tuple(p) for p in regular_polygon(3)]
    edges = [(0, 1), (1, 2), (2, 0)]
    faces = [(0, 1, 2)]
    for v in range(3, n):
        a, b, c = faces.pop(int(rng.integers(len(faces))))
        pos.append(tuple((np.array(pos[a]) + pos[b] + pos[c]) / 3.0))
        edges += [(a, v), (b, v), (c, v)]
        faces += [(a, b, v), (b, c, v), (c, a, v)]
    return np.array(pos), edges


def stacked(seed: int = 0, n: int = 20, forward: bool = True) -> DrawingDocument:
    if n < 4:
        raise BadParameters("stacked needs n >= 4")
    rng = np.random.default_rng(seed)
    pos, edges = _stacked_structure(rng, n)
    doc = DrawingDocument(pos, edges, [0, 1, 2])
    return forward_redraw(doc, rng) if forward else doc


def cubic_dual(seed: int = 0, n: int = 10) -> DrawingDocument:
    """Dual of a stacked triangulation on ``n`` vertices (2n - 4 cubic vertices).

    The outer face of the dual is the ring of triangles around primal vertex 0.
    """
    if n < 4:
        raise BadParameters("cubic_dual needs n >= 4")
    rng = np.random.default_rng(seed)
    pos, edges = _stacked_structure(rng, n)
    primal = embed(PlanarGraph.from_edges(n, edges), pos)
    faces = primal.faces + [primal.outer_face[::-1]]
    face_of = {}
    for k, f in enumerate(faces):
        for t in range(len(f)):
            face_of[(f[t], f[(t + 1) % len(f)])] = k
    dual_edges = sorted({edge_key(face_of[(i, j)], face_of[(j, i)]) for i, j in primal.edge_list()})
    ring = [face_of[(0, u)] for u in primal.neighbours(0)]
    nd = len(faces)
    dpos = np.zeros((nd, 2))
    dpos[ring] = regular_polygon(len(ring))
    doc = DrawingDocument(dpos, dual_edges, ring)
    return forward_redraw(doc, rng)


@dataclass
class GeneratorSpec:
    family: str
    params: dict[str, Any] = field(default_factory=dict)


def generate(spec: GeneratorSpec | str, **params) -> DrawingDocument:
    if isinstance(spec, str):
        spec = GeneratorSpec(spec, params)
    fn = {
        "prism": prism,
        "wheel": wheel,
        "halin": halin,
        "stacked": stacked,
        "nested_rotated": nested_rotated,
        "nested_hub": nested_hub,
        "antiprism": antiprism,
        "cubic_dual": cubic_dual,
    }.get(spec.family)
    if fn is None:
        raise BadParameters(f"unknown family {spec.family!r}; choose from {FAMILIES}")
    try:
        return fn(**spec.params)
    except TypeError as exc:
        raise BadParameters(f"{spec.family}: {exc}") from exc


def perturb(
    doc: DrawingDocument,
    rng: np.random.Generator,
    fraction: float = 0.05,
    directions: int = 16,
) -> tuple[DrawingDocument, int]:
    """Move one internal vertex by ``fraction`` of the bbox diagonal.

    Internal vertices are tried in random order, each in ``directions``
    evenly spaced directions with a random phase, until the moved drawing
    is still a valid input: crossing-free, convex faces, hull outer face,
    every internal vertex strictly inside its neighbours' hull. Weights are
    dropped since they no longer describe the drawing. Raises
    BadParameters when no such move exists.
    """
    from .recognizer import compute_z, validate

    outer = set(doc.outer_face)
    internal = [v for v in range(doc.n) if v not in outer]
    if not internal:
        raise BadParameters("nothing to perturb")
    diag = float(np.hypot(*np.ptp(doc.positions, axis=0)))
    graph = doc.graph()
    for v in rng.permutation(internal).tolist():
        phase = rng.uniform(0.0, 2 * math.pi)
        for theta in phase + 2 * math.pi * np.arange(directions) / directions:
            pos = doc.positions.copy()
            pos[v] += fraction * diag * np.array([math.cos(theta), math.sin(theta)])
            try:
                drawing = embed(graph, pos, doc.outer_face, DEFAULT_TOLERANCES)
                if validate(drawing) is not None:
                    continue
                compute_z(drawing)
            except BaryRecogError:
                continue
            return DrawingDocument(pos, doc.edges, list(doc.outer_face)), v
    raise BadParameters(f"no internal vertex admits a valid {fraction:.0%} move")
