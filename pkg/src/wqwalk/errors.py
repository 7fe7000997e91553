"""Exception types raised by wqwalk."""


class WalkError(ValueError):
    """Base class for all wqwalk errors."""


class NonPositiveWeight(WalkError):
    pass


class DuplicateEdge(WalkError):
    pass


class VertexOutOfRange(WalkError, IndexError):
    pass


class IsolatedVertex(WalkError):
    """A walk operator was given a graph with a zero-weight vertex."""


class DimensionMismatch(WalkError):
    pass


class MovingShiftUnsupported(WalkError):
    """The moving shift is only defined on line graphs."""


class BoundaryContamination(WalkError):
    """Amplitude reached an end vertex of a truncated line."""


class NonIntegerMultiplicity(WalkError):
    pass


class NonUniformGroup(WalkError):
    """A state is not uniform across a group of parallel loop slots."""


class NegativeLoopWeight(WalkError):
    pass


class RhoOutOfRange(WalkError):
    pass


class NoPeakFound(WalkError):
    pass


class AmbiguousRegime(WalkError):
    """Loop weight is comparable to N and no explicit ratio was given."""
