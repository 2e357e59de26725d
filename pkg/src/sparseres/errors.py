"""Error classes, each mapped to a CLI exit code."""


class SparseResError(Exception):
    exit_code = 3


class HypothesisError(SparseResError):
    """A mathematical precondition fails, e.g. a vanishing directional resultant."""

    exit_code = 1


class InputError(SparseResError, ValueError):
    exit_code = 2


class NumericalError(SparseResError, ArithmeticError):
    exit_code = 3
