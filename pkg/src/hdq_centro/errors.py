"""Exception types shared by the grid, operator, eigensolver and plate layers."""


class InvalidArgument(ValueError):
    """A caller-supplied parameter violates a documented precondition."""


class StructureError(ValueError):
    """A matrix or boundary specification lacks the required symmetry."""


class SingularSystem(ArithmeticError):
    """A linear system that must be solved is singular."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class ConvergenceError(ArithmeticError):
    """The dense QR iteration failed to converge."""

    def __init__(self, message, iterations=None, active_size=None):
        super().__init__(message)
        self.iterations = iterations
        self.active_size = active_size


class NumericalInstability(ArithmeticError):
    """A plate spectrum left the real, non-negative axis beyond tolerance."""


class ReferenceMissing(KeyError):
    """No stored reference value exists for the requested aspect ratio."""
