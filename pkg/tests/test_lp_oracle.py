import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import instances as I
from baryrecog import generators as G
from baryrecog.documents import DrawingDocument
from baryrecog.errors import BadParameters, Disagreement
from baryrecog.graph_core import PlanarGraph, embed
from baryrecog.lp_oracle import build_feasibility, cross_validate, oracle
from baryrecog.tutte_forward import barycenter_residual

K4 = PlanarGraph.from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])


def test_problem_sizes():
    assert build_feasibility(embed(K4, [(0, 0), (4, 0), (2, 4), (2, 4 / 3)])).shape == (2, 3)
    assert build_feasibility(I.embedded(G.prism(3))).shape == (6, 6)
    assert build_feasibility(I.embedded(G.wheel(5))).shape == (2, 5)


def test_k4_any_interior_hub_is_feasible():
    res = oracle(embed(K4, [(0, 0), (4, 0), (2, 4), (3.1, 0.4)]))
    assert res.feasible and min(res.weights.values()) > 0


@pytest.mark.parametrize("twist", [5.0, 10.0, 20.0])
def test_rotated_nested_triangle_infeasible(twist):
    assert not oracle(I.embedded(G.nested_rotated(twist))).feasible


def test_aligned_nested_triangle_equal_weights():
    res = oracle(I.embedded(G.nested_rotated(0.0)))
    assert res.feasible
    w = np.array(list(res.weights.values()))
    assert w == pytest.approx(np.full(6, 1 / 6), abs=1e-12)


def test_weights_reproduce_positions_general_degree():
    doc = G.stacked(7, 30)
    res = oracle(I.embedded(doc))
    assert res.feasible
    assert barycenter_residual(doc.graph(), res.weights, doc.positions, doc.outer_face) <= 1e-8


@given(st.integers(0, 10_000), st.floats(0.01, 100.0), st.floats(-50, 50), st.floats(-50, 50))
def test_verdict_invariant_under_similarity(seed, scale, dx, dy):
    _, doc = I.cubic_forward(seed)
    if seed % 2:
        try:
            doc, _ = G.perturb(doc, np.random.default_rng(seed))
        except BadParameters:
            pass
    moved = DrawingDocument(doc.positions * scale + (dx, dy), doc.edges, doc.outer_face)
    assert oracle(I.embedded(moved)).verdict == oracle(I.embedded(doc)).verdict


@given(st.integers(0, 10_000))
def test_feasible_weights_are_sound(seed):
    docs = I.general_degree_suite()
    _, doc = docs[seed % len(docs)]
    res = oracle(I.embedded(doc))
    assert res.feasible
    assert barycenter_residual(doc.graph(), res.weights, doc.positions, doc.outer_face) <= 1e-8


def test_cross_validate_prism_and_rotated():
    rep = cross_validate(I.embedded(G.prism(5)))
    assert rep.agree and rep.proportional
    rep = cross_validate(I.embedded(G.nested_rotated(20.0)))
    assert rep.agree and rep.recognizer_verdict == "rejected" and rep.oracle_verdict == "infeasible"


def test_cross_validate_flags_disagreement(monkeypatch):
    import baryrecog.lp_oracle as lp

    real = lp.oracle
    monkeypatch.setattr(lp, "oracle", lambda d, tol=None: real(I.embedded(G.nested_rotated(20.0))))
    with pytest.raises(Disagreement):
        cross_validate(I.embedded(G.prism(3)))
