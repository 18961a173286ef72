"""Exception types shared across the toolkit."""


class MomoError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(MomoError, ValueError):
    """Vectors or fronts with mismatched dimensionality."""


class DomainError(MomoError, ValueError):
    """Input outside the mathematical domain of an operation."""


class StateError(MomoError, RuntimeError):
    """Operation invoked on an object in the wrong state (e.g. unevaluated solution)."""


class ConfigurationError(MomoError, ValueError):
    """Invalid configuration: bad parameter, unresolvable id, malformed file."""


class EvaluationError(MomoError, RuntimeError):
    """Objective or constraint evaluation failed.

    Carries the index of the offending solution within the evaluated batch.
    """

    def __init__(self, message, solution_index=None):
        super().__init__(message)
        self.solution_index = solution_index
