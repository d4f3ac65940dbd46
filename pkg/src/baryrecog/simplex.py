"""Dense two-phase revised simplex.

Solves ``maximize c @ x  subject to  A_eq @ x = b_eq, x >= 0``. The basis
matrix is refactored from the original columns at every iteration, which
at the sizes used here (a few hundred columns) costs little and keeps the
iterates free of accumulated pivoting error.

Pricing is Dantzig's largest reduced cost; after a run of degenerate
pivots it switches to Bland's smallest-index rule, which cannot cycle,
and switches back once the objective moves again. Rows and columns are
equilibrated (scaled to unit largest magnitude) before solving.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .errors import NumericalFailure

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

#: Consecutive degenerate pivots tolerated before falling back to Bland's rule.
DEGENERATE_RUN = 20


@dataclass
class LPResult:
    status: str
    x: np.ndarray | None
    objective: float
    iterations: int
    basis: list[int] | None = None


def _iterate(A, b, c, basis, allowed, tol, pivot_tol, max_iter, phase):
    """Pivot from a feasible basis until optimal or unbounded."""
    m = A.shape[0]
    it = 0
    stall = 0
    scale = max(1.0, float(np.abs(c).max(initial=0.0)))
    while True:
        lu = lu_factor(A[:, basis], check_finite=False)
        xb = lu_solve(lu, b, check_finite=False)
        y = lu_solve(lu, c[basis], trans=1, check_finite=False)
        reduced = c - A.T @ y
        reduced[basis] = 0.0
        candidates = np.nonzero((reduced > tol * scale) & allowed)[0]
        if candidates.size == 0:
            return OPTIMAL, xb, it
        if it >= max_iter:
            raise NumericalFailure(
                f"simplex phase {phase} exceeded iteration cap ({max_iter}); problem may be ill-conditioned"
            )
        bland = stall >= DEGENERATE_RUN
        col = int(candidates[0]) if bland else int(candidates[np.argmax(reduced[candidates])])
        d = lu_solve(lu, A[:, col], check_finite=False)
        rows = np.nonzero(d > pivot_tol * max(1.0, float(np.abs(d).max())))[0]
        if rows.size == 0:
            return UNBOUNDED, xb, it
        ratios = np.maximum(xb[rows], 0.0) / d[rows]
        best = ratios.min()
        ties = rows[ratios <= best + tol * max(1.0, best)]
        if bland:
            leave = int(min(ties, key=lambda r: basis[r]))
        else:
            # Among ties prefer the largest pivot element for stability.
            leave = int(ties[np.argmax(d[ties])])
        stall = stall + 1 if best <= tol else 0
        basis[leave] = col
        it += 1
        if len(set(basis)) != m:
            raise NumericalFailure("basis lost a column; numerical breakdown")


def _equilibrate(A):
    """Row then column scale factors giving every row and column max-magnitude 1."""
    r = np.abs(A).max(axis=1)
    r[r == 0] = 1.0
    As = A / r[:, None]
    s = np.abs(As).max(axis=0)
    s[s == 0] = 1.0
    return r, s


def maximize(
    c,
    A_eq,
    b_eq,
    *,
    tol: float = 1e-10,
    pivot_tol: float = 1e-9,
    feas_tol: float = 1e-9,
    max_iter: int | None = None,
) -> LPResult:
    """Maximise ``c @ x`` over ``{x >= 0 : A_eq x = b_eq}``.

    Phase I starts from one artificial variable per row and minimises their
    sum. Artificials still basic afterwards are pivoted out where a real
    column can replace them; otherwise their row is redundant and they stay
    at zero, barred from re-entering.

    Raises NumericalFailure when a phase needs more than ``max_iter``
    pivots (default ``10 * (rows + cols)``).
    """
    c = np.asarray(c, dtype=float)
    A = np.array(A_eq, dtype=float, ndmin=2)
    b = np.array(b_eq, dtype=float)
    m, n = A.shape
    if max_iter is None:
        max_iter = 10 * (m + n)

    r, s = _equilibrate(A)
    A = A / r[:, None] / s[None, :]
    b = b / r
    c_s = c / s
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0
    Aext = np.hstack([A, np.eye(m)])
    basis = list(range(n, n + m))

    c1 = np.zeros(n + m)
    c1[n:] = -1.0
    allowed = np.ones(n + m, dtype=bool)
    _, xb, it1 = _iterate(Aext, b, c1, basis, allowed, tol, pivot_tol, max_iter, 1)
    infeas = float(sum(xb[k] for k in range(m) if basis[k] >= n))
    if infeas > feas_tol * max(1.0, float(np.abs(b).max(initial=0.0))):
        return LPResult(INFEASIBLE, None, float("nan"), it1)

    # Drive zero-level artificials out of the basis where possible.
    lu = lu_factor(Aext[:, basis], check_finite=False)
    for k in range(m):
        if basis[k] < n:
            continue
        e = np.zeros(m)
        e[k] = 1.0
        row = lu_solve(lu, e, trans=1, check_finite=False) @ A
        row[[j for j in basis if j < n]] = 0.0
        j = int(np.argmax(np.abs(row)))
        if abs(row[j]) > pivot_tol:
            basis[k] = j
            lu = lu_factor(Aext[:, basis], check_finite=False)

    c2 = np.concatenate([c_s, np.zeros(m)])
    allowed = np.zeros(n + m, dtype=bool)
    allowed[:n] = True
    status, xb, it2 = _iterate(Aext, b, c2, basis, allowed, tol, pivot_tol, max_iter, 2)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, float("inf"), it1 + it2, basis)
    x = np.zeros(n + m)
    x[basis] = np.maximum(xb, 0.0)
    x = x[:n] / s
    return LPResult(OPTIMAL, x, float(c @ x), it1 + it2, [j for j in basis if j < n])
