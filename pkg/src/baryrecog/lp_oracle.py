"""Exact recognition by linear programming directly in the edge weights.

A drawing is a weighted barycenter drawing iff the homogeneous system

    sum_{j in N(i)} w_ij (p_j - p_i) = 0        for every internal vertex i

has a strictly positive solution w over the internal edges. We maximise
the smallest weight ``t`` subject to ``sum w = 1`` and ``w >= t``; the drawing
is recognised iff ``t* > eps_lp``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import simplex
from .errors import Disagreement, NumericalFailure
from .geometry import DEFAULT_TOLERANCES, Tolerances
from .graph_core import Edge, EmbeddedDrawing

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"


@dataclass
class FeasibilityProblem:
    A: np.ndarray
    edges: list[Edge]
    vertices: list[int]

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape


@dataclass
class OracleResult:
    verdict: str
    weights: dict[Edge, float] | None
    t_star: float
    iterations: int = 0

    @property
    def feasible(self) -> bool:
        return self.verdict == FEASIBLE


def build_feasibility(drawing: EmbeddedDrawing) -> FeasibilityProblem:
    """Two rows (x and y) per internal vertex, one column per internal edge.

    Positions are centred and divided by the bounding-box diagonal first so
    the matrix entries are O(1) whatever the drawing's scale.
    """
    pts = drawing.positions
    pts = (pts - pts.mean(axis=0)) / (drawing.diagonal or 1.0)
    edges = drawing.internal_edges
    col = {e: k for k, e in enumerate(edges)}
    verts = drawing.internal_vertices
    A = np.zeros((2 * len(verts), len(edges)))
    for r, i in enumerate(verts):
        for j in drawing.graph.adjacency[i]:
            k = col[(i, j) if i < j else (j, i)]
            A[2 * r : 2 * r + 2, k] = pts[j] - pts[i]
    return FeasibilityProblem(A, list(edges), list(verts))


def solve_strict_feasibility(problem: FeasibilityProblem, tol: Tolerances = DEFAULT_TOLERANCES) -> OracleResult:
    """Maximise the minimum weight; Feasible iff it is positive beyond ``eps_lp``.

    Substituting ``w = u + t`` with ``u, t >= 0`` gives a standard-form LP.
    """
    A = problem.A
    rows, m = A.shape
    if m == 0:
        return OracleResult(FEASIBLE if rows == 0 else INFEASIBLE, {}, float("inf") if rows == 0 else 0.0)
    M = np.zeros((rows + 1, m + 1))
    M[:rows, :m] = A
    M[:rows, m] = A.sum(axis=1)
    M[rows, :m] = 1.0
    M[rows, m] = m
    b = np.zeros(rows + 1)
    b[rows] = 1.0
    c = np.zeros(m + 1)
    c[m] = 1.0
    res = simplex.maximize(c, M, b)
    if res.status == simplex.UNBOUNDED:
        raise NumericalFailure("strict-feasibility LP reported unbounded; t is bounded by 1/m")
    if res.status == simplex.INFEASIBLE:
        return OracleResult(INFEASIBLE, None, 0.0, res.iterations)
    t = float(res.x[m])
    if t <= tol.eps_lp:
        return OracleResult(INFEASIBLE, None, t, res.iterations)
    w = res.x[:m] + t
    w = w / w.sum()
    defect = float(np.abs(A @ w).max(initial=0.0))
    if defect > 1e-9:
        raise NumericalFailure(f"LP solution violates the barycenter equations by {defect:.3e}")
    return OracleResult(FEASIBLE, dict(zip(problem.edges, w.tolist())), float(w.min()), res.iterations)


def oracle(drawing: EmbeddedDrawing, tol: Tolerances = DEFAULT_TOLERANCES) -> OracleResult:
    return solve_strict_feasibility(build_feasibility(drawing), tol)


@dataclass
class AgreementReport:
    recognizer_verdict: str
    oracle_verdict: str
    agree: bool
    proportional: bool | None = None
    max_ratio_spread: float | None = None


def cross_validate(drawing: EmbeddedDrawing, tol: Tolerances = DEFAULT_TOLERANCES) -> AgreementReport:
    """Run the cycle-product recognizer and the LP oracle and compare.

    Raises Disagreement if the verdicts differ or if accepted weight vectors
    are not proportional on some connected component of the interior.
    """
    from .graph_core import internal_subgraph_forest
    from .recognizer import ACCEPTED, recognize

    rec = recognize(drawing, mode="cubic-only", tol=tol)
    orc = oracle(drawing, tol)
    rec_yes = rec.verdict == ACCEPTED
    report = AgreementReport(rec.verdict, orc.verdict, rec_yes == orc.feasible)
    if not report.agree:
        raise Disagreement(f"recognizer says {rec.verdict}, oracle says {orc.verdict}")
    if rec_yes:
        forest = internal_subgraph_forest(drawing, warn=False)
        groups: dict[int, list[float]] = {}
        for (i, j), w in rec.weights.items():
            v = i if drawing.is_internal(i) else j
            groups.setdefault(forest.component_of(v), []).append(orc.weights[(i, j)] / w)
        spread = max((max(r) / min(r) - 1.0 for r in groups.values()), default=0.0)
        report.proportional = spread <= 1e-6
        report.max_ratio_spread = spread
        if not report.proportional:
            raise Disagreement(f"accepted weights are not proportional (spread {spread:.3e})")
    return report
