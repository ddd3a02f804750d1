"""Exception types shared across the package."""


class KStruveError(Exception):
    """Base class for all package errors."""


class DomainError(KStruveError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ConvergenceError(KStruveError, ArithmeticError):
    """A series exceeded its overflow guard or could not be summed."""


class QuadratureError(KStruveError, ArithmeticError):
    """A quadrature rule hit a non-finite integrand value."""


class SolverError(KStruveError, RuntimeError):
    """The Volterra recurrence became singular (cannot happen for valid input)."""
