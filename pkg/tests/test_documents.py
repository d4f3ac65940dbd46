import io
import json
import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from baryrecog import generators as G
from baryrecog.documents import DrawingDocument, dumps, loads, read_document, write_document
from baryrecog.errors import ParseError, SchemaError

K4 = {
    "vertices": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 4, "y": 0}, {"id": 2, "x": 2, "y": 4}, {"id": 3, "x": 2, "y": 1.5}],
    "edges": [[0, 1], [1, 2], [2, 0], [0, 3], [1, 3], [2, 3]],
}


def test_k4_parses():
    doc = loads(json.dumps(K4))
    g = doc.graph()
    assert (g.n, g.m) == (4, 6)
    assert doc.outer_face is None and doc.weights is None


def test_dangling_edge():
    bad = dict(K4, edges=K4["edges"] + [[0, 7]])
    with pytest.raises(SchemaError, match="unknown vertex"):
        loads(json.dumps(bad))


@pytest.mark.parametrize(
    "patch",
    [
        {"colour": "red"},
        {"vertices": [{"id": 0, "x": 0}]},
        {"vertices": K4["vertices"][:3] + [{"id": 5, "x": 0, "y": 0}]},
        {"edges": [[0, 0]]},
        {"edges": [[0, 1], [1, 0]]},
        {"weights": [{"edge": [0, 1], "w": -1.0}]},
        {"weights": [{"edge": [0, 3], "w": 1.0}, {"edge": [3, 0], "w": 2.0}]},
        {"outer_face": [0, 1, 1]},
    ],
)
def test_schema_violations(patch):
    with pytest.raises(SchemaError):
        loads(json.dumps(dict(K4, **patch)))


def test_missing_field():
    with pytest.raises(SchemaError):
        loads(json.dumps({"vertices": K4["vertices"]}))


def test_parse_error_has_position():
    with pytest.raises(ParseError, match=r"line 2, column \d+"):
        loads('{"vertices": [],\n "edges": [,]}')


def test_prism_second_write_is_byte_identical():
    doc = G.forward_redraw(G.prism(4), np.random.default_rng(3))
    first = dumps(doc)
    assert dumps(loads(first)) == first


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=8, max_size=8))
def test_reals_round_trip_exactly(values):
    pos = np.array(values).reshape(4, 2)
    doc = DrawingDocument(pos, K4["edges"], [0, 1, 2], {(0, 3): 0.1 + 0.2, (1, 3): 1e-300, (2, 3): 7.0})
    back = loads(dumps(doc))
    assert np.array_equal(back.positions, pos)
    assert back.weights == doc.weights


def test_stream_and_path(tmp_path):
    doc = G.wheel(4)
    buf = io.StringIO()
    write_document(doc, buf)
    path = tmp_path / "w.json"
    write_document(doc, path)
    assert path.read_text() == buf.getvalue()
    assert dumps(read_document(path)) == dumps(read_document(io.StringIO(buf.getvalue())))


def test_atomic_write_leaves_no_temp_files(tmp_path):
    path = tmp_path / "d.json"
    path.write_text("old")
    write_document(G.wheel(3), path)
    assert os.listdir(tmp_path) == ["d.json"]
    assert read_document(path).n == 4


def test_non_utf8_is_parse_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_bytes(b"\xff\xfe{}")
    with pytest.raises(ParseError):
        read_document(path)
