"""Exception types raised by the package."""


class DomainError(ValueError):
    """An operation was applied outside the set where it is defined."""


class ConditioningError(ArithmeticError):
    """A floating-point divisor or determinant is too small to trust."""


class ConsistencyError(RuntimeError):
    """A solved coefficient row fails the linear relations it must satisfy.

    Signals either a malformed metric or an implementation bug.
    """
