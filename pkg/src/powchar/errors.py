"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function it was passed to."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature hit its depth limit before meeting the tolerance."""

    def __init__(self, message, error_estimate):
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


class InsufficientDataError(ValueError):
    """Too few observations for the requested test."""
