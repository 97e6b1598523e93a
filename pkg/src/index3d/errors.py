"""Exception hierarchy. The CLI prints ``type(err).__name__`` for every one of these."""


class Index3DError(Exception):
    """Base class for all computation errors raised by the package."""


class LeadingCoefficientNotUnit(Index3DError):
    pass


class InsufficientOrder(Index3DError):
    pass


class NonConvergent(Index3DError):
    pass


class LengthMismatch(Index3DError):
    pass


class InfinitePrecisionRequired(Index3DError):
    pass


class ParseError(Index3DError):
    pass


class SymplecticViolation(Index3DError):
    pass


class RankDeficient(Index3DError):
    pass


class NegativeQuadCount(Index3DError):
    pass


class ColumnSumViolation(Index3DError):
    pass


class HomologyHypothesisViolation(Index3DError):
    pass


class RadiusExceeded(Index3DError):
    pass


class NonIntegralCharge(Index3DError):
    pass


class SymplecticNotPreserved(Index3DError):
    pass


class InvalidDescriptor(Index3DError):
    pass
