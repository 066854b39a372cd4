"""Exception types shared across the package.

The CLI maps these onto exit codes: parameter/domain problems -> 2,
numeric (quadrature) failures -> 3, I/O problems -> 4.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """The correlation coefficient is too close to the series' singular point."""


class QuadratureError(RuntimeError):
    """Adaptive integration exhausted its refinement budget before converging."""
