"""Exception types raised by distance evaluation and scene geometry."""


class EvaluationError(ValueError):
    """A distance or map produced a non-finite or otherwise unusable value."""


class DomainError(ValueError):
    """A point lies outside the region an operation is defined on."""


class ConvergenceError(ArithmeticError):
    """An iterative numerical routine failed to meet its tolerance."""
