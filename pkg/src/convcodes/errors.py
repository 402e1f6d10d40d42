"""Exception types raised across the package."""


class ConvCodeError(Exception):
    """Base class for all errors raised by convcodes."""


# -- fields -----------------------------------------------------------------
class NotPrime(ConvCodeError, ValueError):
    pass


class NotIrreducible(ConvCodeError, ValueError):
    pass


class DegreeMismatch(ConvCodeError, ValueError):
    pass


class DivisionByZero(ConvCodeError, ZeroDivisionError):
    pass


class FieldMismatch(ConvCodeError, TypeError):
    pass


# -- matrices ---------------------------------------------------------------
class NotSquare(ConvCodeError, ValueError):
    pass


class DimensionMismatch(ConvCodeError, ValueError):
    pass


class SingularMatrix(ConvCodeError, ValueError):
    pass


# -- hankel arrays ----------------------------------------------------------
class SizeExceedsField(ConvCodeError, ValueError):
    pass


class SearchExhausted(ConvCodeError, RuntimeError):
    pass


class OutsideTriangle(ConvCodeError, IndexError):
    pass


# -- constructions ----------------------------------------------------------
class InvalidParams(ConvCodeError, ValueError):
    pass


class PreconditionViolated(ConvCodeError, ValueError):
    pass


class NotRestrictable(ConvCodeError, ValueError):
    pass


# -- conversion -------------------------------------------------------------
class MissingBlock(ConvCodeError, LookupError):
    pass


class CodeMismatch(ConvCodeError, ValueError):
    pass


class TooFewBlocks(ConvCodeError, ValueError):
    pass


class SingularSubmatrix(ConvCodeError, RuntimeError):
    """Raised when an MDS decode hits a singular system (a construction bug)."""


# -- verification / io ------------------------------------------------------
class InstanceTooLarge(ConvCodeError, ValueError):
    pass


class FormatError(ConvCodeError, ValueError):
    pass
