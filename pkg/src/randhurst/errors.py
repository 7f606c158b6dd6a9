"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole (e.g. gamma at a nonpositive integer)."""


class ConvergenceError(ArithmeticError):
    """An iterative scheme (series, quadrature) failed to reach its tolerance."""


class UnsupportedModelError(TypeError):
    """The requested operation is not defined for this Hurst-exponent model."""


class NonPositiveDefiniteError(ArithmeticError):
    """A covariance matrix could not be Cholesky-factored even with jitter."""


class ConfigError(ValueError):
    """An experiment configuration document failed validation."""
