import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from baryrecog import generators as G
from baryrecog.errors import BaryRecogError, SingularSystem
from baryrecog.graph_core import PlanarGraph
from baryrecog.tutte_forward import (
    barycenter_residual,
    solve_barycenter,
    unit_weights,
    verify_tutte_output,
)

K4 = PlanarGraph.from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
K4_OUTER = [(0, (0, 0)), (1, (4, 0)), (2, (2, 4))]


def test_k4_hub_at_centroid():
    pos = solve_barycenter(K4, unit_weights(K4, [0, 1, 2]), K4_OUTER)
    assert pos[3] == pytest.approx([2, 4 / 3], abs=1e-14)


def test_prism_unit_weights_quarter_scale():
    doc = G.prism(3)
    g = doc.graph()
    pos = solve_barycenter(g, unit_weights(g, [0, 1, 2]), [(v, doc.positions[v]) for v in range(3)])
    # Each inner vertex: 3 t = 1 - t along its ray, so t = 1/4.
    assert pos[3:] == pytest.approx(0.25 * doc.positions[:3], abs=1e-14)
    assert pos == pytest.approx(doc.positions, abs=1e-14)


def test_global_weight_scaling_leaves_drawing_unchanged():
    doc = G.stacked(4, 25)
    doubled = {e: 2 * w for e, w in doc.weights.items()}
    outer = [(v, doc.positions[v]) for v in doc.outer_face]
    again = solve_barycenter(doc.graph(), doubled, outer)
    assert np.abs(again - doc.positions).max() <= 1e-13


def test_rejects_nonconvex_outer_polygon():
    g = PlanarGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)])
    outer = [(0, (0, 0)), (1, (2, 0)), (2, (1, 0.2)), (3, (1, 2))]
    with pytest.raises(BaryRecogError):
        solve_barycenter(g, unit_weights(g, [0, 1, 2, 3]), outer)


def test_rejects_nonpositive_weight():
    w = unit_weights(K4, [0, 1, 2])
    w[(0, 3)] = 0.0
    with pytest.raises(SingularSystem):
        solve_barycenter(K4, w, K4_OUTER)


def test_missing_weight_is_reported():
    w = unit_weights(K4, [0, 1, 2])
    del w[(1, 3)]
    with pytest.raises(BaryRecogError):
        solve_barycenter(K4, w, K4_OUTER)


def test_prism_output_is_planar_and_convex():
    doc = G.prism(3)
    rep = verify_tutte_output(doc.graph(), doc.positions, doc.outer_face)
    assert rep.ok


def test_verify_flags_a_moved_vertex():
    doc = G.prism(3, twist=0.0)
    pos = doc.positions.copy()
    pos[3] = (0.0, -0.5)  # across the inner triangle: edges now cross
    rep = verify_tutte_output(doc.graph(), pos, doc.outer_face)
    assert not rep.ok


def test_residual_is_zero_on_forward_output():
    doc = G.halin(2)
    assert barycenter_residual(doc.graph(), doc.weights, doc.positions, doc.outer_face) <= 1e-14


def _random_convex_polygon(rng, k):
    ang = np.sort(rng.uniform(0, 2 * np.pi, k))
    while np.max(np.diff(np.r_[ang, ang[0] + 2 * np.pi])) >= np.pi:
        ang = np.sort(rng.uniform(0, 2 * np.pi, k))
    return np.column_stack([np.cos(ang), np.sin(ang)]) * rng.uniform(0.5, 3.0)


@given(st.integers(0, 10_000), st.sampled_from(["halin", "stacked", "prism", "antiprism", "cubic_dual"]))
def test_forward_output_is_planar_with_convex_faces(seed, family):
    rng = np.random.default_rng(seed)
    if family == "halin":
        doc = G.halin(seed, forward=False)
    elif family == "stacked":
        doc = G.stacked(seed, 8 + seed % 20, forward=False)
    elif family == "prism":
        doc = G.prism(3 + seed % 6)
    elif family == "antiprism":
        doc = G.antiprism(3 + seed % 6)
    else:
        doc = G.cubic_dual(seed, 6 + seed % 8)
    k = len(doc.outer_face)
    pos = doc.positions.copy()
    pos[doc.outer_face] = _random_convex_polygon(rng, k)
    doc = G.DrawingDocument(pos, doc.edges, doc.outer_face)
    out = G.forward_redraw(doc, rng)
    assert verify_tutte_output(out.graph(), out.positions, out.outer_face).ok


@given(st.integers(0, 10_000))
def test_solution_independent_of_vertex_order(seed):
    doc = G.stacked(seed, 15)
    rng = np.random.default_rng(seed)
    perm = rng.permutation(doc.n)  # new label of old vertex v is perm[v]
    edges = [(int(perm[i]), int(perm[j])) for i, j in doc.edges]
    weights = {(min(perm[i], perm[j]), max(perm[i], perm[j])): w for (i, j), w in doc.weights.items()}
    outer = [(int(perm[v]), doc.positions[v]) for v in doc.outer_face]
    pos = solve_barycenter(PlanarGraph.from_edges(doc.n, edges), weights, outer)
    assert np.abs(pos[perm] - doc.positions).max() <= 1e-10
