"""Exception hierarchy.

Every validation error carries the name of the violated invariant and,
where one exists, the measured residual so callers (and the CLI) can
report it verbatim.
"""


class TelemixError(ValueError):
    """Base class for all package errors."""

    invariant = "TelemixError"

    def __init__(self, message, residual=None):
        self.residual = residual
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(f"{self.invariant}: {message}")


class NotHermitian(TelemixError):
    invariant = "NotHermitian"


class TraceNotOne(TelemixError):
    invariant = "TraceNotOne"


class NotPSD(TelemixError):
    invariant = "NotPSD"


class NoConvergence(TelemixError, ArithmeticError):
    invariant = "NoConvergence"


class BadShape(TelemixError):
    invariant = "BadShape"


class ParamOutOfRange(TelemixError):
    invariant = "ParamOutOfRange"

    def __init__(self, name, value, interval):
        self.name = name
        self.value = value
        self.interval = interval
        super().__init__(f"{name}={value!r} outside admissible interval {interval}")


class DomainError(TelemixError):
    invariant = "DomainError"


class NonRealCorrelation(TelemixError):
    invariant = "NonRealCorrelation"
