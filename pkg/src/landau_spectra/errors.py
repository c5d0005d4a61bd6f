"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedError(ValueError):
    """The request is well-formed but outside what the implementation handles."""


class QuadratureError(RuntimeError):
    """Log-domain quadrature exhausted its panel budget.

    ``bracket`` holds the best (lower, upper) estimates of the log-integral
    reached before giving up.
    """

    def __init__(self, message, bracket=(float("-inf"), float("inf"))):
        super().__init__(message)
        self.bracket = bracket


class ConvergenceError(RuntimeError):
    """An iterative or grid-refinement procedure failed to settle."""
