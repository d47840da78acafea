"""Exception hierarchy shared by every deltafilt module."""


class DeltaFiltError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(DeltaFiltError, ValueError):
    pass


class NoSolution(DeltaFiltError, ArithmeticError):
    pass


class UnknownLabel(DeltaFiltError, KeyError):
    pass


class CycleDetected(DeltaFiltError):
    pass


class CapExceeded(DeltaFiltError):
    pass


class PreconditionViolated(DeltaFiltError, ValueError):
    pass


class NotHereditary(DeltaFiltError):
    pass


class InvalidAlgebra(DeltaFiltError, ValueError):
    pass


class InvalidRepresentation(DeltaFiltError, ValueError):
    pass


class ZeroModule(DeltaFiltError, ValueError):
    pass


class NoRetraction(DeltaFiltError):
    pass


class NotASubmodule(DeltaFiltError, ValueError):
    pass


class NotValidated(DeltaFiltError):
    pass


class FactorNotInDelta(DeltaFiltError):
    pass


class NestingViolation(DeltaFiltError, ValueError):
    pass


class FactorMismatch(DeltaFiltError):
    pass


class SplitFailed(DeltaFiltError):
    pass


class NotSorted(DeltaFiltError, ValueError):
    pass


class ModuleMismatch(DeltaFiltError, ValueError):
    pass


class NotExact(DeltaFiltError, ValueError):
    pass


class NotIdempotent(DeltaFiltError, ValueError):
    pass


class TraceSumMismatch(DeltaFiltError):
    pass


class IllegalSwap(DeltaFiltError):
    pass
