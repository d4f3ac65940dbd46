"""Seeded instance sets shared by the test modules.

Every set is a deterministic function of fixed seeds, so a failure points
at a reproducible drawing.
"""

from __future__ import annotations

import itertools

import numpy as np

from baryrecog import generators as G
from baryrecog.errors import BadParameters
from baryrecog.graph_core import embed


def prism_forward(k: int, seed: int):
    return G.forward_redraw(G.prism(k), np.random.default_rng(seed))


def wheel_forward(k: int, seed: int):
    return G.forward_redraw(G.wheel(k), np.random.default_rng(seed))


def antiprism_forward(k: int, seed: int):
    return G.forward_redraw(G.antiprism(k), np.random.default_rng(seed))


def forward_suite():
    """The 50 forward-solved instances: 6 prisms, 6 wheels, 12 Halin, 26 stacked (n = 10..60)."""
    docs = [(f"prism k={k}", prism_forward(k, 100 + k)) for k in range(3, 9)]
    docs += [(f"wheel k={k}", wheel_forward(k, 200 + k)) for k in range(3, 9)]
    docs += [(f"halin seed={s}", G.halin(s)) for s in range(12)]
    docs += [(f"stacked seed={s} n={10 + 2 * s}", G.stacked(s, 10 + 2 * s)) for s in range(26)]
    return docs


def cubic_forward(index: int):
    """Forward-solved cubic instance number ``index``: prisms, cubic Halin or cubic duals."""
    kind = index % 3
    if kind == 0:
        return f"prism k={3 + index % 7} seed={index}", prism_forward(3 + index % 7, index)
    if kind == 1:
        return f"cubic halin seed={index}", G.halin(index, internal=2 + index % 8, max_children=2)
    return f"cubic_dual seed={index} n={8 + index % 10}", G.cubic_dual(index, 8 + index % 10)


def cubic_suite(count: int = 100):
    """``count`` forward-solved cubic instances and ``count`` single-vertex 5% perturbations.

    Perturbations walk the same index stream; an index whose drawing admits
    no valid 5% move is skipped, so the perturbed list is also ``count`` long.
    """
    forward = [cubic_forward(i) for i in range(count)]
    perturbed = []
    for i in itertools.count():
        if len(perturbed) == count:
            break
        name, doc = cubic_forward(i)
        try:
            moved, v = G.perturb(doc, np.random.default_rng(10_000 + i))
        except BadParameters:
            continue
        perturbed.append((f"{name} moved v{v}", moved))
    return forward, perturbed


def general_degree_suite():
    """20 forward-solved instances with internal vertices of degree >= 4."""
    docs = [(f"antiprism k={k}", antiprism_forward(k, 300 + k)) for k in range(3, 9)]
    docs += [(f"stacked seed={s} n={10 + s}", G.stacked(s, 10 + s)) for s in range(14)]
    return docs


def perturbed_variants(docs, seed: int = 0):
    out = []
    rng = np.random.default_rng(seed)
    for name, doc in docs:
        try:
            moved, v = G.perturb(doc, rng)
        except BadParameters:
            continue
        out.append((f"{name} moved v{v}", moved))
    return out


def embedded(doc):
    return embed(doc.graph(), doc.positions, doc.outer_face)
