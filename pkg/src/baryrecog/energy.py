"""Spring energy whose minimisers are exactly the weighted barycenter drawings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import geometry
from .errors import WrongFamily
from .graph_core import Edge, PlanarGraph


@dataclass
class EnergyReport:
    total: float
    per_edge: dict[Edge, float]
    gradient: dict[int, np.ndarray]
    gradient_norm_max: float


def _internal_mask(n: int, outer: Sequence[int]) -> np.ndarray:
    mask = np.ones(n, dtype=bool)
    mask[list(outer)] = False
    return mask


def total_energy(positions, weights: Mapping[Edge, float]) -> float:
    pts = np.asarray(positions, dtype=float)
    if not weights:
        return 0.0
    E = np.array(list(weights.keys()), dtype=int)
    w = np.array(list(weights.values()), dtype=float)
    d = pts[E[:, 0]] - pts[E[:, 1]]
    return 0.5 * float(np.sum(w * np.einsum("ij,ij->i", d, d)))


def energy(graph: PlanarGraph, positions, weights: Mapping[Edge, float], outer: Sequence[int]) -> EnergyReport:
    """Edge energies 0.5 * w * |p_i - p_j|^2 over internal edges, and the
    gradient sum_j w_ij (p_i - p_j) at each internal vertex.

    ``weights`` must cover every internal edge; entries for other edges are
    ignored.
    """
    pts = geometry.as_points(positions)
    internal = _internal_mask(graph.n, outer)
    per_edge = {}
    for (i, j), w in weights.items():
        if internal[i] or internal[j]:
            d = pts[i] - pts[j]
            per_edge[(i, j)] = 0.5 * w * float(d @ d)
    grad = {}
    for i in np.nonzero(internal)[0].tolist():
        g = np.zeros(2)
        for j in graph.adjacency[i]:
            g += weights[(i, j) if i < j else (j, i)] * (pts[i] - pts[j])
        grad[i] = g
    gmax = max((float(np.abs(g).max()) for g in grad.values()), default=0.0)
    return EnergyReport(math.fsum(per_edge.values()), per_edge, grad, gmax)


def gradient_scale(positions, weights: Mapping[Edge, float]) -> float:
    """Natural gradient magnitude: bounding-box diagonal times the largest weight."""
    return geometry.bbox_diagonal(positions) * max(weights.values(), default=1.0)


def is_stationary(report: EnergyReport, positions, weights, rel: float = 1e-8) -> bool:
    return report.gradient_norm_max <= rel * gradient_scale(positions, weights)


@dataclass
class GradientCheck:
    max_error: float
    h: float
    tolerance: float = 1e-6

    @property
    def ok(self) -> bool:
        return self.max_error <= self.tolerance


def gradient_check(graph, positions, weights, outer, h: float | None = None, rel_h: float = 1e-5) -> GradientCheck:
    """Compare the analytic gradient with central differences of the total energy.

    Error is the largest absolute difference divided by
    ``gradient_scale``. ``h`` defaults to ``rel_h`` times the bounding-box
    diagonal. The energy is quadratic, so central differences carry no
    truncation error and only roundoff shows up, whatever the step.
    """
    pts = geometry.as_points(positions).copy()
    diag = geometry.bbox_diagonal(pts)
    if h is None:
        h = rel_h * diag
    if not h > 0:
        raise ValueError("finite-difference step must be positive")
    outer_set = set(outer)
    internal_w = {e: w for e, w in weights.items() if e[0] not in outer_set or e[1] not in outer_set}
    rep = energy(graph, pts, internal_w, outer)
    scale = gradient_scale(pts, internal_w) or 1.0
    worst = 0.0
    for i, g in rep.gradient.items():
        for c in range(2):
            orig = pts[i, c]
            pts[i, c] = orig + h
            up = total_energy(pts, internal_w)
            pts[i, c] = orig - h
            down = total_energy(pts, internal_w)
            pts[i, c] = orig
            fd = (up - down) / (2 * h)
            worst = max(worst, abs(fd - g[c]) / scale)
    return GradientCheck(worst, h)


def jacobi_step(graph: PlanarGraph, positions, weights, vertex: int) -> np.ndarray:
    """Move one internal vertex to the weighted barycenter of its neighbours."""
    pts = np.array(positions, dtype=float)
    nbrs = list(graph.adjacency[vertex])
    w = np.array([weights[(vertex, j) if vertex < j else (j, vertex)] for j in nbrs])
    pts[vertex] = w @ pts[nbrs] / w.sum()
    return pts


def _prism_rings(graph: PlanarGraph, outer: Sequence[int]):
    """Match each inner vertex to its unique outer neighbour; WrongFamily otherwise."""
    outer = list(outer)
    outer_set = set(outer)
    inner = [v for v in range(graph.n) if v not in outer_set]
    if len(inner) != len(outer) or len(outer) < 3:
        raise WrongFamily("not a nested-polygon prism: ring sizes differ")
    for v in inner:
        ext = [u for u in graph.adjacency[v] if u in outer_set]
        inn = [u for u in graph.adjacency[v] if u not in outer_set]
        if len(ext) != 1 or len(inn) != 2:
            raise WrongFamily(f"vertex {v} does not look like an inner prism vertex")
    if graph.m != 3 * len(outer):
        raise WrongFamily("not a nested-polygon prism: wrong edge count")
    return inner


def rotate_inner(positions, inner: Sequence[int], angle: float, centre) -> np.ndarray:
    pts = np.array(positions, dtype=float)
    c, s = math.cos(angle), math.sin(angle)
    R = np.array([[c, -s], [s, c]])
    pts[inner] = (pts[inner] - centre) @ R.T + centre
    return pts


def rotation_perturbation_probe(
    graph: PlanarGraph, positions, weights, outer: Sequence[int], epsilon: float
) -> tuple[float, float]:
    """Energy change when the inner ring is rotated by +epsilon and -epsilon radians.

    Rotation is about the centroid of the outer polygon. Returns
    ``(delta_ccw, delta_cw)``. Rotating the inner ring keeps inner-ring
    edge lengths, so only the spokes change length.
    """
    inner = _prism_rings(graph, outer)
    pts = geometry.as_points(positions)
    centre = pts[list(outer)].mean(axis=0)
    base = total_energy(pts, weights)
    plus = total_energy(rotate_inner(pts, inner, epsilon, centre), weights)
    minus = total_energy(rotate_inner(pts, inner, -epsilon, centre), weights)
    return plus - base, minus - base
