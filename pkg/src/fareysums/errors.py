"""Exception types shared across the package."""


class FareyError(Exception):
    """Base class for all package-specific errors."""


class PreconditionError(FareyError, ValueError):
    """An operation was called outside its documented domain."""


class BudgetError(FareyError):
    """A computation would exceed the configured memory or term budget."""


class TheoremViolation(FareyError):
    """An identity that must hold mathematically failed on concrete data.

    This is never expected in normal operation: raising it means concrete
    numbers contradicted an identity the code relies on, which points at a
    bug (or at inputs that slipped past precondition checks).
    """
