"""Exception types shared across the package.

Every approximate routine fails loudly instead of returning a large finite
number near a singularity.  The CLI maps :class:`DomainError` (and its
subclasses) to exit code 2.
"""


class MetakitError(Exception):
    """Base class for all package errors."""


class DomainError(MetakitError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested too close to a pole.

    ``location`` holds the nearest pole.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ZeroDivisorError(DomainError):
    """A normalising factor vanishes at the requested parameter."""


class AccuracyError(MetakitError):
    """A quadrature or series could not reach its tolerance.

    ``achieved`` holds the best error bound that was obtained.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class UnavailableError(MetakitError):
    """No admissible data source exists for the requested value."""
