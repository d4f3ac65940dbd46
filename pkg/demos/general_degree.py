"""Vertices of degree four or more: the LP oracle against the local search.

Above degree three a vertex's position fixes its weights only up to a
nullspace, so recognition is no longer a product test. The exact mode asks
an LP for strictly positive weights; the heuristic mode searches the
nullspaces and can only ever say "accepted" or "inconclusive".

Run: python3 demos/general_degree.py
"""

import time

import numpy as np

from baryrecog import generators as G
from baryrecog.graph_core import embed
from baryrecog.recognizer import recognize


def main():
    cases = [
        ("octahedron", G.forward_redraw(G.antiprism(3), np.random.default_rng(1))),
        ("antiprism k=6", G.forward_redraw(G.antiprism(6), np.random.default_rng(2))),
        ("stacked n=16", G.stacked(5, 16)),
        ("hub prism, aligned", G.nested_hub(0.0)),
        ("hub prism, twisted 20deg", G.nested_hub(20.0)),
    ]
    for name, doc in cases:
        drawing = embed(doc.graph(), doc.positions, doc.outer_face)
        t0 = time.perf_counter()
        exact = recognize(drawing, mode="exact")
        t1 = time.perf_counter()
        heur = recognize(drawing, mode="heuristic", starts=10, iterations=300)
        t2 = time.perf_counter()
        print(f"{name:26} exact: {exact.verdict:9} ({t1 - t0:.2f} s)   heuristic: {heur.verdict:12} ({t2 - t1:.2f} s)")


if __name__ == "__main__":
    main()
