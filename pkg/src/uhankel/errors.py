"""Exception hierarchy shared by all modules."""


class UHankelError(Exception):
    pass


class DomainError(UHankelError, ValueError):
    """An argument lies outside the domain of the operation."""


class OrderMismatchError(DomainError):
    pass


class SingularityError(DomainError):
    """Reciprocal of a series with vanishing constant term."""


class LengthError(DomainError):
    """Not enough coefficients for the requested determinant."""


class PoleError(DomainError):
    """Denominator vanishes (within tolerance) at a sample point."""


class CatalogError(UHankelError, LookupError):
    pass


class ConvergenceError(UHankelError, RuntimeError):
    """Local refinement did not settle; ``best`` holds the best report so far."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
