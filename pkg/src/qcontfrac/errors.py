"""Exception types shared across the package."""


class UsageError(ValueError):
    """Bad arguments: mismatched orders, unknown ids, exceeded caps."""


class DomainError(ArithmeticError):
    """Mathematically undefined request (non-unit inverse, negative q-power)."""


class ConvergenceError(ArithmeticError):
    """A continued fraction did not stabilize within its depth guard."""
