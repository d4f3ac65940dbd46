"""Decide whether a drawing is a weighted barycenter drawing and recover weights.

Pipeline: convex-combination coordinates z per internal vertex, ratios
zeta_ij = z_ji / z_ij on strictly internal edges, log cycle products around
strictly internal faces, then scale factors s with s_i z_ij = s_j z_ji
propagated over a spanning forest, giving w_ij = s_i z_ij.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import geometry, lp_oracle
from .errors import (
    AsymmetryResidual,
    BaryRecogError,
    BudgetExhausted,
    GeometryError,
    MissingDirection,
)
from .geometry import DEFAULT_TOLERANCES, Tolerances
from .graph_core import Edge, EmbeddedDrawing, Forest, PlanarGraph, edge_key, embed, internal_subgraph_forest
from .tutte_forward import barycenter_residual

log = logging.getLogger(__name__)

ACCEPTED = "accepted"
REJECTED = "rejected"
INVALID = "invalid"
INCONCLUSIVE = "inconclusive"

MODES = ("exact", "heuristic", "cubic-only")


@dataclass
class ZAssignment:
    """Per-vertex coefficient vectors in rotation order, plus nullspace bases."""

    order: dict[int, tuple[int, ...]]
    coeffs: dict[int, np.ndarray]
    nullspace: dict[int, np.ndarray] = field(default_factory=dict)

    def __getitem__(self, key: Edge) -> float:
        i, j = key
        return float(self.coeffs[i][self.order[i].index(j)])

    def __contains__(self, key) -> bool:
        i, j = key
        return i in self.order and j in self.order[i]

    def as_dict(self) -> dict[Edge, float]:
        return {(i, j): float(z) for i, nb in self.order.items() for j, z in zip(nb, self.coeffs[i])}

    def replace(self, coeffs: Mapping[int, np.ndarray]) -> "ZAssignment":
        new = dict(self.coeffs)
        new.update(coeffs)
        return ZAssignment(self.order, new, self.nullspace)


@dataclass
class ScaleFactors:
    s: dict[int, float]
    roots: list[int]
    log_s: dict[int, float] = field(default_factory=dict)


@dataclass
class Certificate:
    face: int
    vertices: list[int]
    residual: float


@dataclass
class RecognitionResult:
    verdict: str
    weights: dict[Edge, float] | None = None
    certificate: Certificate | None = None
    barycenter_residual: float | None = None
    scale_residual: float | None = None
    reason: str | None = None
    path: str | None = None
    z: ZAssignment | None = None
    scales: ScaleFactors | None = None
    face_residuals: dict[int, float] | None = None
    drawing: EmbeddedDrawing | None = None

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPTED


def compute_z(drawing: EmbeddedDrawing, tol: Tolerances = DEFAULT_TOLERANCES) -> ZAssignment:
    """Coefficients expressing each internal vertex as a convex mix of its neighbours.

    Degree 3 gives the unique barycentric coordinates; higher degrees get the
    combination maximising the smallest coefficient, plus a nullspace basis.
    Raises OutsideHull / CollinearNeighbours for invalid drawings.
    """
    pts = drawing.positions
    order, coeffs, null = {}, {}, {}
    for i in drawing.internal_vertices:
        nbrs = drawing.neighbours(i)
        cc = geometry.convex_coords_general(pts[i], pts[list(nbrs)], tol)
        order[i] = tuple(nbrs)
        coeffs[i] = cc.base
        null[i] = cc.nullspace
    return ZAssignment(order, coeffs, null)


def zeta_ratios(z: ZAssignment, edges: Sequence[Edge]) -> dict[Edge, float]:
    """zeta_ij = z_ji / z_ij for both directions of each given edge."""
    zeta = {}
    for i, j in edges:
        if (i, j) not in z or (j, i) not in z:
            raise MissingDirection(f"edge ({i}, {j}) has an external endpoint; zeta is undefined")
        zij, zji = z[(i, j)], z[(j, i)]
        zeta[(i, j)] = zji / zij
        zeta[(j, i)] = zij / zji
    return zeta


def _log_zeta(z: ZAssignment, i: int, j: int) -> float:
    return math.log(z[(j, i)]) - math.log(z[(i, j)])


def face_log_sums(z: ZAssignment, drawing: EmbeddedDrawing, faces: Sequence[int] | None = None) -> dict[int, float]:
    """Signed sum of ln zeta around each strictly internal face (counter-clockwise)."""
    if faces is None:
        faces = drawing.strictly_internal_faces
    out = {}
    for k in faces:
        f = drawing.faces[k]
        out[k] = math.fsum(_log_zeta(z, f[t], f[(t + 1) % len(f)]) for t in range(len(f)))
    return out


def face_log_products(z: ZAssignment, drawing: EmbeddedDrawing, faces: Sequence[int] | None = None) -> dict[int, float]:
    """Per-face residual |sum ln zeta|; zero iff the cycle-product condition holds."""
    return {k: abs(v) for k, v in face_log_sums(z, drawing, faces).items()}


def propagate_scales(forest: Forest, log_zeta: Mapping[Edge, float]) -> ScaleFactors:
    """Scale factors from s_root = 1 and s_child = zeta_{child,parent} * s_parent.

    ``log_zeta`` maps directed edges to ln zeta. This enforces
    s_i - zeta_ij s_j = 0 on every tree edge.
    """
    log_s: dict[int, float] = {}
    for v in forest.order:
        p = forest.parent[v]
        log_s[v] = 0.0 if p is None else log_s[p] + log_zeta[(v, p)]
    return ScaleFactors({v: math.exp(x) for v, x in log_s.items()}, list(forest.roots), log_s)


def verify_scales(scales: ScaleFactors, zeta: Mapping[Edge, float], edges: Sequence[Edge]) -> float:
    """Largest |s_i - zeta_ij s_j| / s_i over the given edges."""
    worst = 0.0
    s = scales.s
    for i, j in edges:
        worst = max(worst, abs(s[i] - zeta[(i, j)] * s[j]) / s[i])
    return worst


def assemble_weights(
    scales: ScaleFactors,
    z: ZAssignment,
    drawing: EmbeddedDrawing,
    rel_tol: float = 1e-5,
    normalise: bool = True,
) -> dict[Edge, float]:
    """w_ij = s_i z_ij on internal edges; strictly internal ones are symmetrised.

    Raises AsymmetryResidual if s_i z_ij and s_j z_ji differ by more than
    ``rel_tol`` relative.
    """
    s = scales.s
    w = {}
    for e in drawing.internal_edges:
        i, j = e
        if drawing.is_internal(i) and drawing.is_internal(j):
            a, b = s[i] * z[(i, j)], s[j] * z[(j, i)]
            if abs(a - b) > rel_tol * max(a, b):
                raise AsymmetryResidual(f"edge {e}: s_i z_ij = {a:.6g} but s_j z_ji = {b:.6g}")
            w[e] = 0.5 * (a + b)
        elif drawing.is_internal(i):
            w[e] = s[i] * z[(i, j)]
        else:
            w[e] = s[j] * z[(j, i)]
    if normalise and w:
        top = max(w.values())
        w = {e: v / top for e, v in w.items()}
    return w


def rank_of_B(z: ZAssignment, drawing: EmbeddedDrawing, rtol: float = 1e-9) -> int:
    """Numerical rank of the weighted incidence matrix of the scale equations.

    Rows are strictly internal edges (i, j) with +z_ij in column i and -z_ji
    in column j; columns are internal vertices.
    """
    verts = drawing.internal_vertices
    col = {v: k for k, v in enumerate(verts)}
    edges = drawing.strictly_internal_edges
    if not edges:
        return 0
    Bt = np.zeros((len(edges), len(verts)))
    for r, (i, j) in enumerate(edges):
        Bt[r, col[i]] = z[(i, j)]
        Bt[r, col[j]] = -z[(j, i)]
    sv = np.linalg.svd(Bt, compute_uv=False)
    return int(np.sum(sv > rtol * sv[0]))


def _combination_residual(z: ZAssignment, drawing: EmbeddedDrawing) -> float:
    pts = drawing.positions
    return max(
        (geometry.combination_residual(pts[i], pts[list(z.order[i])], z.coeffs[i]) for i in z.order),
        default=0.0,
    )


def heuristic_general(
    drawing: EmbeddedDrawing,
    z: ZAssignment,
    tol: Tolerances = DEFAULT_TOLERANCES,
    starts: int = 100,
    iterations: int = 500,
    seed: int = 0,
) -> ZAssignment:
    """Local search over the nullspaces of the z equations for a z passing every face test.

    Each internal vertex's coefficients move in the affine set
    ``base + alpha @ nullspace``. Alongside them a log scale ``t_i`` is
    carried per internal vertex, and the residuals
    ``t_i + log z_ij - t_j - log z_ji`` over strictly internal edges are
    driven to zero by damped Gauss-Newton (Levenberg-Marquardt) steps.
    Those residuals vanish for some ``t`` exactly when every cycle of
    internal vertices, hence every strictly internal face, has log-sum
    zero, and they are better conditioned than the face sums themselves.
    Steps are cut back so no coefficient loses more than half its value.

    Start 0 is the max-min base; further starts are random interior
    points. Returns the first z whose face residuals are all
    ``<= eps_cycle``; raises BudgetExhausted otherwise.
    """
    verts = [v for v in z.order if z.nullspace[v].shape[0] > 0]
    offset, k = {}, 0
    for v in verts:
        offset[v] = k
        k += z.nullspace[v].shape[0]
    t_index = {v: k + r for r, v in enumerate(sorted(z.order))}
    K = k + len(t_index)
    terms = [(i, z.order[i].index(j), j, z.order[j].index(i)) for i, j in drawing.strictly_internal_edges]

    def coeffs_at(x):
        return {v: z.coeffs[v] + x[offset[v] : offset[v] + z.nullspace[v].shape[0]] @ z.nullspace[v] for v in verts}

    def get(cf, v):
        return cf[v] if v in cf else z.coeffs[v]

    def residuals(x, cf):
        return np.array(
            [x[t_index[i]] + math.log(get(cf, i)[p]) - x[t_index[j]] - math.log(get(cf, j)[q]) for i, p, j, q in terms]
        )

    def jacobian(cf):
        J = np.zeros((len(terms), K))
        for r, (i, p, j, q) in enumerate(terms):
            J[r, t_index[i]] += 1.0
            J[r, t_index[j]] -= 1.0
            if i in offset:
                J[r, offset[i] : offset[i] + z.nullspace[i].shape[0]] += z.nullspace[i][:, p] / cf[i][p]
            if j in offset:
                J[r, offset[j] : offset[j] + z.nullspace[j].shape[0]] -= z.nullspace[j][:, q] / cf[j][q]
        return J

    def max_step(cf, direction, shrink):
        """Largest step keeping every coefficient above ``shrink`` times its value."""
        tau = np.inf
        for v in verts:
            dz = direction[offset[v] : offset[v] + z.nullspace[v].shape[0]] @ z.nullspace[v]
            neg = dz < 0
            if np.any(neg):
                tau = min(tau, float(np.min((1.0 - shrink) * cf[v][neg] / -dz[neg])))
        return tau

    def passes(cf):
        cand = z.replace(cf)
        res = face_log_products(cand, drawing)
        ok = all(r <= tol.eps_cycle for r in res.values())
        ok = ok and all(np.all(c > tol.eps_pos) for c in cand.coeffs.values())
        return ok and _combination_residual(cand, drawing) <= 1e-10, cand

    if k == 0:
        ok, cand = passes({})
        if ok:
            return cand
        raise BudgetExhausted("no degrees of freedom and the face test fails")

    rng = np.random.default_rng(seed)
    best = math.inf
    target = 0.1 * tol.eps_cycle
    for start in range(starts):
        x = np.zeros(K)
        if start > 0:
            d = np.zeros(K)
            d[:k] = rng.standard_normal(k)
            d /= np.linalg.norm(d)
            x = d * rng.uniform(0.0, 0.9) * min(max_step(coeffs_at(x), d, 0.0), 1e6)
        cf = coeffs_at(x)
        r = residuals(x, cf)
        cost = float(r @ r)
        lam = 1e-3
        for _ in range(iterations):
            if np.abs(r).max(initial=0.0) <= target:
                break
            J = jacobian(cf)
            H = J.T @ J
            step = np.linalg.solve(H + lam * (np.diag(np.diag(H)) + 1e-12 * np.eye(K)), -(J.T @ r))
            tau = max_step(cf, step, 0.5)
            trial = x + min(1.0, tau) * step
            cf_t = coeffs_at(trial)
            r_t = residuals(trial, cf_t)
            cost_t = float(r_t @ r_t)
            if cost_t < cost:
                x, cf, r, cost = trial, cf_t, r_t, cost_t
                lam = max(lam / 3.0, 1e-12)
            else:
                lam *= 4.0
                if lam > 1e12:
                    break
        ok, cand = passes(cf)
        best = min(best, max(face_log_products(cand, drawing).values(), default=0.0))
        if ok:
            log.debug("heuristic converged on start %d", start)
            return cand
    raise BudgetExhausted(f"no z passing all face tests after {starts} starts (best face residual {best:.3e})")


def validate(drawing: EmbeddedDrawing, tol: Tolerances = DEFAULT_TOLERANCES) -> str | None:
    """Reason the drawing cannot be a barycenter drawing for trivial reasons, or None."""
    pts = drawing.positions
    outer = geometry.is_convex_polygon(pts[drawing.outer_face], tol.eps_geom)
    if not (outer.convex and outer.strict):
        return "outer face is not a strictly convex polygon"
    for k, f in enumerate(drawing.faces):
        if not geometry.is_convex_polygon(pts[f], tol.eps_geom).convex:
            return f"face {k} {f} is not convex"
    return None


def _finish(drawing, z, scales, weights, path, tol, face_res):
    zeta = zeta_ratios(z, drawing.strictly_internal_edges)
    scale_res = verify_scales(scales, zeta, drawing.strictly_internal_edges)
    bary_res = barycenter_residual(drawing.graph, weights, drawing.positions, drawing.outer_face)
    if bary_res > tol.eps_residual:
        log.warning("accepted drawing reproduces the barycenter equations only to %.3e", bary_res)
    return RecognitionResult(
        ACCEPTED,
        weights=weights,
        barycenter_residual=bary_res,
        scale_residual=scale_res,
        path=path,
        z=z,
        scales=scales,
        face_residuals=face_res,
        drawing=drawing,
    )


def _accept_with_z(drawing, z, forest, path, tol, face_res=None):
    zeta = zeta_ratios(z, drawing.strictly_internal_edges)
    log_zeta = {e: math.log(v) for e, v in zeta.items()}
    scales = propagate_scales(forest, log_zeta)
    scale_res = verify_scales(scales, zeta, drawing.strictly_internal_edges)
    if scale_res > max(tol.eps_cycle, 1e-6):
        raise AsymmetryResidual(f"scale equations violated on a back edge by {scale_res:.3e}")
    weights = assemble_weights(scales, z, drawing)
    return _finish(drawing, z, scales, weights, path, tol, face_res)


def _certificate(face_res: Mapping[int, float], drawing: EmbeddedDrawing) -> Certificate | None:
    if not face_res:
        return None
    worst = max(face_res, key=lambda k: (face_res[k], -k))
    return Certificate(worst, list(drawing.faces[worst]), face_res[worst])


def _accept_from_lp(drawing, weights, forest, tol):
    """Turn oracle weights into z and s so every accepted result carries both."""
    top = max(weights.values())
    weights = {e: w / top for e, w in weights.items()}
    order, coeffs, s = {}, {}, {}
    for i in drawing.internal_vertices:
        nbrs = drawing.neighbours(i)
        w = np.array([weights[edge_key(i, j)] for j in nbrs])
        order[i] = tuple(nbrs)
        s[i] = float(w.sum())
        coeffs[i] = w / s[i]
    z = ZAssignment(order, coeffs, {})
    scales = ScaleFactors(s, list(forest.roots), {v: math.log(x) for v, x in s.items()})
    return _finish(drawing, z, scales, weights, "lp", tol, face_log_products(z, drawing))


def recognize(
    drawing: EmbeddedDrawing | PlanarGraph,
    mode: str = "exact",
    *,
    positions=None,
    outer_face=None,
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
    starts: int = 100,
    iterations: int = 500,
) -> RecognitionResult:
    """Is the drawing a weighted barycenter drawing?

    Accepts an EmbeddedDrawing, or a PlanarGraph plus ``positions`` (and an
    optional ``outer_face``) in which case the embedding is derived first.

    Dispatch after validation:

    * no strictly internal face: accept; scales propagate over a forest.
    * every internal vertex of degree 3: the z are unique and the face
      cycle-product test decides; failures carry the worst face.
    * otherwise ``exact`` asks the LP oracle, ``heuristic`` searches the z
      nullspaces (accept-only), and ``cubic-only`` refuses.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if isinstance(drawing, PlanarGraph):
        if positions is None:
            raise ValueError("positions are required when passing a PlanarGraph")
        try:
            drawing = embed(drawing, positions, outer_face, tol)
        except BaryRecogError as exc:
            return RecognitionResult(INVALID, reason=f"{type(exc).__name__}: {exc}")

    reason = validate(drawing, tol)
    if reason:
        return RecognitionResult(INVALID, reason=reason, drawing=drawing)
    try:
        z = compute_z(drawing, tol)
    except GeometryError as exc:
        return RecognitionResult(INVALID, reason=f"{type(exc).__name__}: {exc}", drawing=drawing)

    forest = internal_subgraph_forest(drawing)
    if not drawing.strictly_internal_faces:
        return _accept_with_z(drawing, z, forest, "vacuous", tol, {})

    cubic = all(drawing.graph.degree(v) == 3 for v in drawing.internal_vertices)
    if cubic:
        face_res = face_log_products(z, drawing)
        cert = _certificate(face_res, drawing)
        if cert.residual > tol.eps_cycle:
            return RecognitionResult(
                REJECTED, certificate=cert, path="cubic", z=z, face_residuals=face_res, drawing=drawing
            )
        return _accept_with_z(drawing, z, forest, "cubic", tol, face_res)

    if mode == "cubic-only":
        return RecognitionResult(
            INVALID, reason="cubic-only mode: some internal vertex has degree > 3", drawing=drawing, z=z
        )
    if mode == "exact":
        orc = lp_oracle.oracle(drawing, tol)
        if orc.feasible:
            return _accept_from_lp(drawing, orc.weights, forest, tol)
        face_res = face_log_products(z, drawing)
        return RecognitionResult(
            REJECTED,
            certificate=_certificate(face_res, drawing),
            path="lp",
            z=z,
            face_residuals=face_res,
            drawing=drawing,
        )
    try:
        found = heuristic_general(drawing, z, tol, starts=starts, iterations=iterations, seed=seed)
    except BudgetExhausted as exc:
        face_res = face_log_products(z, drawing)
        return RecognitionResult(
            INCONCLUSIVE,
            certificate=_certificate(face_res, drawing),
            reason=str(exc),
            path="heuristic",
            z=z,
            face_residuals=face_res,
            drawing=drawing,
        )
    return _accept_with_z(drawing, found, forest, "heuristic", tol, face_log_products(found, drawing))
