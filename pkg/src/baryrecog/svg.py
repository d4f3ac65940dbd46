"""Deterministic SVG 1.1 rendering of drawings and recognition results."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

import numpy as np

from .documents import DrawingDocument
from .graph_core import edge_key

CANVAS = 480.0
MARGIN = 30.0

OUTER_FILL = "#eef3fb"
CERTIFICATE_FILL = "#f4a6a6"


def _fmt(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".") if v != 0 else "0"


def _transform(positions: np.ndarray):
    lo = positions.min(axis=0)
    span = float(max(np.ptp(positions, axis=0).max(), 1e-300))
    k = (CANVAS - 2 * MARGIN) / span

    def to_canvas(p):
        # SVG's y axis points down.
        return MARGIN + k * (p[0] - lo[0]), CANVAS - MARGIN - k * (p[1] - lo[1])

    return to_canvas


def _polygon(points, fill: str, cls: str) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    return f'<polygon class="{cls}" points="{pts}" fill="{fill}" stroke="none"/>'


def render_svg(document: DrawingDocument, result=None) -> str:
    """SVG text for ``document``: one circle per vertex, one line per edge.

    The outer face (if known) is shaded. With an accepted ``result`` each
    edge carrying a recovered weight is labelled with it to 3 significant
    digits; with a rejected one the certificate face is filled.
    """
    pos = document.positions
    to_canvas = _transform(pos)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(CANVAS)}" '
        f'height="{_fmt(CANVAS)}" viewBox="0 0 {_fmt(CANVAS)} {_fmt(CANVAS)}">',
    ]
    outer = document.outer_face
    if result is not None and getattr(result, "drawing", None) is not None:
        outer = result.drawing.outer_face
    if outer:
        parts.append(_polygon([to_canvas(pos[v]) for v in outer], OUTER_FILL, "outer-face"))
    certificate = getattr(result, "certificate", None) if result is not None else None
    if certificate is not None and not result.accepted:
        parts.append(_polygon([to_canvas(pos[v]) for v in certificate.vertices], CERTIFICATE_FILL, "certificate"))

    for i, j in sorted(edge_key(a, b) for a, b in document.edges):
        (x1, y1), (x2, y2) = to_canvas(pos[i]), to_canvas(pos[j])
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="#333" stroke-width="1.5"/>'
        )
    if result is not None and result.accepted and result.weights:
        for (i, j), w in sorted(result.weights.items()):
            (x1, y1), (x2, y2) = to_canvas(pos[i]), to_canvas(pos[j])
            label = quoteattr(f"{w:.3g}")[1:-1]
            parts.append(
                f'<text x="{_fmt((x1 + x2) / 2)}" y="{_fmt((y1 + y2) / 2)}" font-size="10" '
                f'text-anchor="middle" fill="#1a5fb4">{label}</text>'
            )
    for v, p in enumerate(pos):
        x, y = to_canvas(p)
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="#000"><title>{v}</title></circle>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
