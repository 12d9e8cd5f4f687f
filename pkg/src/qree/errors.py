"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a state or parameter invariant."""


class SeparableStateError(ValueError):
    """An operation that needs an entangled state received a separable one."""


class InfeasibleMixingError(RuntimeError):
    """No boundary crossing exists on the mixing segment."""
