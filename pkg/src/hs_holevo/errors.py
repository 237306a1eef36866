"""Exception hierarchy."""


class HSHolevoError(Exception):
    """Base class for all package errors."""


class DimensionError(HSHolevoError, ValueError):
    """Operand shapes are incompatible."""


class InstanceTooLarge(DimensionError):
    """A construction would exceed the configured maximum total dimension."""


class ValidationError(HSHolevoError, ValueError):
    """A value failed a state/measurement/distribution invariant."""


class NotHermitianError(ValidationError):
    pass


class NegativeEigenvalueError(ValidationError):
    pass


class TraceError(ValidationError):
    pass


class NormalizationError(ValidationError):
    pass


class ConvergenceError(HSHolevoError, ArithmeticError):
    """The eigensolver did not converge."""
