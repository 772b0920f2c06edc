"""Exception types raised across the package."""


class SatDesignError(Exception):
    """Base class for all errors raised by satdesign."""


class InvalidEntry(SatDesignError, ValueError):
    """A matrix entry is not exactly -1 or +1."""


class ParseError(SatDesignError, ValueError):
    """Text could not be parsed as a glyph/CSV matrix or design file."""


class DimensionMismatch(SatDesignError, ValueError):
    """Blocks or operands have non-conformable shapes."""


class LengthMismatch(DimensionMismatch):
    pass


class NotSquare(DimensionMismatch):
    pass


class IndexOutOfRange(SatDesignError, IndexError):
    pass


class OrderTooLarge(SatDesignError, ValueError):
    """Requested order exceeds what the operation supports."""


class NotInCatalog(SatDesignError, LookupError):
    pass


class NoHadamardWitness(SatDesignError, LookupError):
    pass


class NotInClass(SatDesignError, ValueError):
    """An input matrix violates the structural preconditions of its class."""


class SingularMatrix(SatDesignError, ValueError):
    pass


class SingularResult(SingularMatrix):
    """An assembled design turned out singular.

    Carries the row picks that produced it so the case can be reproduced.
    """

    def __init__(self, message, g_row_picks=(), m_row_picks=()):
        super().__init__(message)
        self.g_row_picks = tuple(g_row_picks)
        self.m_row_picks = tuple(m_row_picks)


class WrongResidue(SatDesignError, ValueError):
    pass


class SpecMismatch(SatDesignError, ValueError):
    pass
