"""Exception hierarchy shared by all modules."""


class BaryRecogError(Exception):
    """Base class for every error raised by this package."""


class GeometryError(BaryRecogError):
    pass


class DegenerateAngles(GeometryError):
    """Two neighbours of a vertex lie in (almost) the same direction."""


class CollinearNeighbours(GeometryError):
    pass


class OutsideHull(GeometryError):
    """A point is not strictly inside the convex hull of its neighbours."""


class EulerViolation(BaryRecogError):
    """Face walk of a rotation system does not satisfy n - m + f = 2."""


class SingularSystem(BaryRecogError):
    pass


class MissingDirection(BaryRecogError):
    """A zeta ratio was requested on an edge with an external endpoint."""


class AsymmetryResidual(BaryRecogError):
    pass


class BudgetExhausted(BaryRecogError):
    """The local search ran out of starts without finding a solution."""


class NumericalFailure(BaryRecogError):
    pass


class Disagreement(BaryRecogError):
    """Two independent decision procedures returned different verdicts."""


class WrongFamily(BaryRecogError):
    pass


class BadParameters(BaryRecogError, ValueError):
    pass


class ParseError(BaryRecogError):
    pass


class SchemaError(BaryRecogError):
    pass


class CrossingEdges(GeometryError):
    pass


class HullMismatch(GeometryError):
    """The outer face is not the convex hull of the vertex positions."""


class NonConvexFace(GeometryError):
    pass
