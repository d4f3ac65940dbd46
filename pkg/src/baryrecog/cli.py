"""Command-line interface: ``baryrecog <command> [options]``.

Exit codes: 0 accepted / success, 1 rejected, infeasible or inconclusive,
2 invalid input drawing, 3 parse, schema or internal error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import documents, generators, lp_oracle, recognizer
from .energy import energy, gradient_check, is_stationary
from .errors import BaryRecogError, GeometryError, ParseError, SchemaError
from .geometry import DEFAULT_TOLERANCES, Tolerances
from .graph_core import embed
from .svg import render_svg
from .tutte_forward import solve_barycenter

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2
EXIT_ERROR = 3

_VERDICT_EXIT = {
    recognizer.ACCEPTED: EXIT_OK,
    recognizer.REJECTED: EXIT_NEGATIVE,
    recognizer.INCONCLUSIVE: EXIT_NEGATIVE,
    recognizer.INVALID: EXIT_INVALID,
}


class _Invalid(Exception):
    """Input drawing failed validation."""


def _finite(x):
    return None if x is None or not math.isfinite(x) else float(x)


def _parse_param(text: str):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inp", metavar="PATH", help="input document (default: standard input)")
    common.add_argument("--out", metavar="PATH", help="output file (default: standard output)")
    common.add_argument("--json", action="store_true", help="machine-readable result on standard output")
    common.add_argument("--tolerance-cycle", type=float, default=DEFAULT_TOLERANCES.eps_cycle, metavar="X")
    common.add_argument("--seed", type=int, default=0, metavar="N")

    p = argparse.ArgumentParser(
        prog="baryrecog", description="Check whether a planar drawing is a weighted barycenter (Tutte) drawing."
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate an instance document")
    g.add_argument("family", choices=generators.FAMILIES)
    g.add_argument("--param", action="append", type=_parse_param, default=[], metavar="KEY=VALUE")

    sub.add_parser("draw", parents=[common], help="forward solve: positions from weights and outer polygon")

    r = sub.add_parser("recognize", parents=[common], help="decide and recover weights")
    r.add_argument("--mode", choices=recognizer.MODES, default="exact")

    sub.add_parser("oracle", parents=[common], help="LP strict-feasibility oracle alone")
    sub.add_parser("energy", parents=[common], help="energy report for the document's weights")

    s = sub.add_parser("svg", parents=[common], help="render the drawing (with recognition result)")
    s.add_argument("--mode", choices=recognizer.MODES, default="exact")
    s.add_argument("--no-recognize", action="store_true", help="render the bare drawing only")
    return p


def _read(args) -> documents.DrawingDocument:
    if args.inp is None or args.inp == "-":
        return documents.read_document(sys.stdin)
    return documents.read_document(args.inp)


def _emit_text(args, text: str) -> None:
    if args.out:
        documents.atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def _tolerances(args) -> Tolerances:
    return Tolerances(eps_cycle=args.tolerance_cycle)


def _embedded(doc, tol):
    try:
        return embed(doc.graph(), doc.positions, doc.outer_face, tol)
    except BaryRecogError as exc:
        raise _Invalid(f"{type(exc).__name__}: {exc}") from exc


def result_to_obj(result: recognizer.RecognitionResult) -> dict:
    cert = result.certificate
    return {
        "verdict": result.verdict,
        "path": result.path,
        "reason": result.reason,
        "weights": documents.weights_to_obj(result.weights) if result.weights else None,
        "residuals": {
            "barycenter": _finite(result.barycenter_residual),
            "scale": _finite(result.scale_residual),
            "max_face": _finite(max(result.face_residuals.values(), default=0.0)) if result.face_residuals else None,
        },
        "certificate": None
        if cert is None or result.accepted
        else {"face": cert.vertices, "residual": _finite(cert.residual)},
    }


def _cmd_gen(args) -> int:
    params = dict(args.param)
    if args.family in ("halin", "stacked", "cubic_dual"):
        params.setdefault("seed", args.seed)
    doc = generators.generate(args.family, **params)
    _emit_text(args, documents.dumps(doc))
    return EXIT_OK


def _cmd_draw(args) -> int:
    doc = _read(args)
    if doc.outer_face is None or doc.weights is None:
        raise SchemaError("draw needs outer_face and weights in the input document")
    pos = solve_barycenter(doc.graph(), doc.weights, [(v, doc.positions[v]) for v in doc.outer_face])
    out = documents.DrawingDocument(pos, doc.edges, doc.outer_face, doc.weights)
    _emit_text(args, documents.dumps(out))
    return EXIT_OK


def _recognize(args, doc):
    tol = _tolerances(args)
    return recognizer.recognize(
        doc.graph(), args.mode, positions=doc.positions, outer_face=doc.outer_face, tol=tol, seed=args.seed
    )


def _cmd_recognize(args) -> int:
    doc = _read(args)
    result = _recognize(args, doc)
    if args.json:
        _emit_json(result_to_obj(result))
    else:
        line = f"{result.verdict}" + (f" ({result.path})" if result.path else "")
        if result.reason:
            line += f": {result.reason}"
        print(line)
    if args.out and result.accepted:
        recovered = documents.DrawingDocument(doc.positions, doc.edges, result.drawing.outer_face, result.weights)
        documents.write_document(recovered, args.out)
    if result.verdict == recognizer.INVALID:
        print(f"invalid input: {result.reason}", file=sys.stderr)
    return _VERDICT_EXIT[result.verdict]


def _cmd_oracle(args) -> int:
    doc = _read(args)
    tol = _tolerances(args)
    drawing = _embedded(doc, tol)
    reason = recognizer.validate(drawing, tol)
    if reason:
        raise _Invalid(reason)
    res = lp_oracle.oracle(drawing, tol)
    if args.json:
        _emit_json(
            {
                "verdict": res.verdict,
                "t_star": _finite(res.t_star),
                "weights": documents.weights_to_obj(res.weights) if res.weights else None,
            }
        )
    else:
        print(res.verdict)
    return EXIT_OK if res.feasible else EXIT_NEGATIVE


def _cmd_energy(args) -> int:
    doc = _read(args)
    if doc.outer_face is None or doc.weights is None:
        raise SchemaError("energy needs outer_face and weights in the input document")
    graph = doc.graph()
    rep = energy(graph, doc.positions, doc.weights, doc.outer_face)
    check = gradient_check(graph, doc.positions, doc.weights, doc.outer_face)
    stationary = is_stationary(rep, doc.positions, doc.weights)
    if args.json:
        _emit_json(
            {
                "total": rep.total,
                "per_edge": [{"edge": [i, j], "energy": e} for (i, j), e in sorted(rep.per_edge.items())],
                "gradient": [{"vertex": v, "g": [float(g[0]), float(g[1])]} for v, g in sorted(rep.gradient.items())],
                "gradient_norm_max": rep.gradient_norm_max,
                "stationary": stationary,
                "gradient_check_error": check.max_error,
            }
        )
    else:
        print(f"energy {rep.total:.12g}  max |grad| {rep.gradient_norm_max:.3e}  stationary {stationary}")
    return EXIT_OK


def _cmd_svg(args) -> int:
    doc = _read(args)
    result = None if args.no_recognize else _recognize(args, doc)
    _emit_text(args, render_svg(doc, result))
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "draw": _cmd_draw,
    "recognize": _cmd_recognize,
    "oracle": _cmd_oracle,
    "energy": _cmd_energy,
    "svg": _cmd_svg,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return _COMMANDS[args.command](args)
    except (_Invalid, GeometryError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ParseError, SchemaError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (BaryRecogError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
