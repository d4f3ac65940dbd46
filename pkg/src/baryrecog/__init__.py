"""Decide whether a straight-line planar drawing has positive edge weights that explain it.

Forward direction: ``solve_barycenter`` places internal vertices at
weighted averages of their neighbours. Inverse direction: ``recognize``
decides whether a given straight-line drawing arises that way and, if
so, recovers positive symmetric edge weights; ``oracle`` answers the same
question by linear programming.
"""

from .documents import DrawingDocument, read_document, write_document
from .energy import energy, gradient_check, rotation_perturbation_probe
from .errors import BaryRecogError
from .generators import generate, perturb
from .geometry import DEFAULT_TOLERANCES, Tolerances
from .graph_core import EmbeddedDrawing, PlanarGraph, embed
from .lp_oracle import cross_validate, oracle
from .recognizer import ACCEPTED, INCONCLUSIVE, INVALID, REJECTED, RecognitionResult, rank_of_B, recognize
from .svg import render_svg
from .tutte_forward import solve_barycenter, verify_tutte_output

__all__ = [
    "ACCEPTED",
    "DEFAULT_TOLERANCES",
    "INCONCLUSIVE",
    "INVALID",
    "REJECTED",
    "BaryRecogError",
    "DrawingDocument",
    "EmbeddedDrawing",
    "PlanarGraph",
    "RecognitionResult",
    "Tolerances",
    "cross_validate",
    "embed",
    "energy",
    "generate",
    "gradient_check",
    "oracle",
    "perturb",
    "rank_of_B",
    "read_document",
    "recognize",
    "render_svg",
    "rotation_perturbation_probe",
    "solve_barycenter",
    "verify_tutte_output",
    "write_document",
]
