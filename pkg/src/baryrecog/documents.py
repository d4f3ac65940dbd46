"""JSON interchange format for drawings.

    {
      "vertices": [{"id": 0, "x": 0.0, "y": 1.0}, ...],
      "edges": [[0, 1], ...],
      "outer_face": [0, 1, 2],                 # optional
      "weights": [{"edge": [0, 3], "w": 1.0}]  # optional
    }

Unknown fields are rejected. Reals are written with Python's shortest
round-trip ``repr``, so ``write(read(doc))`` is lossless and a second write
is byte-identical to the first.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import IO

import jsonschema
import numpy as np

from .errors import ParseError, SchemaError
from .graph_core import Edge, PlanarGraph, edge_key

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["vertices", "edges"],
    "properties": {
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "x", "y"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "x": {"type": "number"},
                    "y": {"type": "number"},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "outer_face": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 3},
        "weights": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["edge", "w"],
                "properties": {
                    "edge": {
                        "type": "array",
                        "items": {"type": "integer", "minimum": 0},
                        "minItems": 2,
                        "maxItems": 2,
                    },
                    "w": {"type": "number", "exclusiveMinimum": 0},
                },
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


@dataclass
class DrawingDocument:
    positions: np.ndarray
    edges: list[Edge]
    outer_face: list[int] | None = None
    weights: dict[Edge, float] | None = None

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float).reshape(-1, 2)
        self.edges = [(int(i), int(j)) for i, j in self.edges]
        if self.weights is not None:
            self.weights = {edge_key(int(i), int(j)): float(w) for (i, j), w in self.weights.items()}

    @property
    def n(self) -> int:
        return len(self.positions)

    def graph(self) -> PlanarGraph:
        return PlanarGraph.from_edges(self.n, self.edges)

    def to_obj(self) -> dict:
        obj: dict = {
            "vertices": [{"id": i, "x": float(x), "y": float(y)} for i, (x, y) in enumerate(self.positions)],
            "edges": [[i, j] for i, j in self.edges],
        }
        if self.outer_face is not None:
            obj["outer_face"] = [int(v) for v in self.outer_face]
        if self.weights is not None:
            obj["weights"] = weights_to_obj(self.weights)
        return obj

    @classmethod
    def from_obj(cls, obj) -> "DrawingDocument":
        errors = sorted(_VALIDATOR.iter_errors(obj), key=lambda e: list(e.absolute_path))
        if errors:
            err = errors[0]
            where = "/".join(str(p) for p in err.absolute_path) or "<root>"
            raise SchemaError(f"at {where}: {err.message}")
        verts = obj["vertices"]
        n = len(verts)
        ids = [v["id"] for v in verts]
        if sorted(ids) != list(range(n)):
            raise SchemaError("vertex ids must be unique and contiguous from 0")
        pos = np.zeros((n, 2))
        for v in verts:
            pos[v["id"]] = (v["x"], v["y"])
        if not np.all(np.isfinite(pos)):
            raise SchemaError("vertex coordinates must be finite")
        edges = []
        seen = set()
        for k, (i, j) in enumerate(obj["edges"]):
            if i >= n or j >= n:
                raise SchemaError(f"at edges/{k}: edge [{i}, {j}] references an unknown vertex")
            if i == j:
                raise SchemaError(f"at edges/{k}: self-loop on vertex {i}")
            if edge_key(i, j) in seen:
                raise SchemaError(f"at edges/{k}: duplicate edge [{i}, {j}]")
            seen.add(edge_key(i, j))
            edges.append((i, j))
        outer = obj.get("outer_face")
        if outer is not None:
            if any(v >= n for v in outer) or len(set(outer)) != len(outer):
                raise SchemaError("outer_face must list distinct known vertex ids")
        weights = None
        if "weights" in obj:
            weights = {}
            for k, item in enumerate(obj["weights"]):
                i, j = item["edge"]
                key = edge_key(i, j)
                if key not in seen:
                    raise SchemaError(f"at weights/{k}: edge [{i}, {j}] is not listed in edges")
                if key in weights:
                    raise SchemaError(f"at weights/{k}: duplicate weight for edge [{i}, {j}]")
                w = float(item["w"])
                if not np.isfinite(w):
                    raise SchemaError(f"at weights/{k}: weight must be finite")
                weights[key] = w
        return cls(pos, edges, list(outer) if outer is not None else None, weights)


def weights_to_obj(weights: dict[Edge, float]) -> list[dict]:
    return [{"edge": [i, j], "w": float(w)} for (i, j), w in sorted(weights.items())]


def dumps(doc: DrawingDocument) -> str:
    return json.dumps(doc.to_obj(), indent=1) + "\n"


def loads(text: str) -> DrawingDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return DrawingDocument.from_obj(obj)


def read_document(source: str | os.PathLike | IO[str]) -> DrawingDocument:
    if hasattr(source, "read"):
        return loads(source.read())
    try:
        text = Path(source).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{source}: not UTF-8 text") from exc
    return loads(text)


def atomic_write_text(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_document(doc: DrawingDocument, target: str | os.PathLike | IO[str]) -> None:
    text = dumps(doc)
    if hasattr(target, "write"):
        target.write(text)
    else:
        atomic_write_text(target, text)
