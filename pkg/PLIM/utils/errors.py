from .enumerators import Status


class PLIMError(Exception):
    """ Base class of every failure raised by the package.

    Each error carries the `Status` code that the CLI and the sweep records report for it.
    """
    status = Status.POINT_FAILURES

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        return {'status': self.status.name, 'message': str(self), **{k: str(v) for k, v in self.details.items()}}


class InvalidDegreeError(PLIMError, ValueError):
    status = Status.INVALID_DEGREE

class NoDominantRootError(PLIMError, ValueError):
    status = Status.NO_DOMINANT_ROOT

class FieldMismatchError(PLIMError, TypeError):
    status = Status.FIELD_MISMATCH

class DivisionByZeroError(PLIMError, ZeroDivisionError):
    status = Status.DIVISION_BY_ZERO

class PrecisionExhaustedError(PLIMError, ArithmeticError):
    status = Status.PRECISION_EXHAUSTED

class ReducibleFieldError(PLIMError, ArithmeticError):
    status = Status.REDUCIBLE_FIELD

class OutOfDomainError(PLIMError, ValueError):
    status = Status.OUT_OF_DOMAIN

class InvalidParametersError(PLIMError, ValueError):
    status = Status.INVALID_PARAMETERS

class BreakpointAmbiguityError(PLIMError, ArithmeticError):
    status = Status.BREAKPOINT_AMBIGUITY

class NoFixedPointError(PLIMError, ValueError):
    status = Status.NO_FIXED_POINT

class BoundOrbitError(PLIMError, ArithmeticError):
    status = Status.BOUND_ORBIT

class WindowUnderflowError(PLIMError, ArithmeticError):
    status = Status.WINDOW_UNDERFLOW

class FragmentationError(PLIMError, RuntimeError):
    status = Status.FRAGMENTATION

class NotMultinacciError(PLIMError, ValueError):
    status = Status.NOT_MULTINACCI

class MatchedStateError(PLIMError, ValueError):
    status = Status.MATCHED_STATE

class OffAlphabetError(PLIMError, ValueError):
    status = Status.OFF_ALPHABET

class OutsideRegimeError(PLIMError, ValueError):
    status = Status.OUTSIDE_REGIME

class ConfigError(PLIMError, ValueError):
    status = Status.USAGE_ERROR

class BoundaryOffOrbitError(PLIMError, ArithmeticError):
    status = Status.BOUNDARY_OFF_ORBIT
