"""Draw a graph from random weights, then recover weights from the picture.

For a cubic graph the recovered weights equal the originals up to one
global factor. With vertices of degree four or more many weight choices
give the same picture, and the recognizer returns one of them; redrawing
with it still reproduces every vertex.

Run: python3 demos/round_trip.py
"""

import numpy as np

from baryrecog import generators as G
from baryrecog.graph_core import embed
from baryrecog.recognizer import recognize
from baryrecog.tutte_forward import solve_barycenter


def round_trip(name, doc):
    result = recognize(embed(doc.graph(), doc.positions, doc.outer_face))
    ratios = np.array([result.weights[e] / doc.weights[e] for e in sorted(doc.weights)])
    pos = solve_barycenter(doc.graph(), result.weights, [(v, doc.positions[v]) for v in doc.outer_face])
    print(f"{name}: {doc.n} vertices, verdict {result.verdict} via the {result.path} path")
    print(f"  recovered / original weight ratio spread {ratios.max() / ratios.min():.6f} (1 = same up to scale)")
    print(f"  redraw with recovered weights moves vertices by at most {np.abs(pos - doc.positions).max():.2e}")


def main():
    round_trip("cubic dual", G.cubic_dual(seed=3, n=9))
    round_trip("stacked triangulation", G.stacked(seed=4, n=14))


if __name__ == "__main__":
    main()
