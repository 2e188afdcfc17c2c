"""Exception hierarchy."""


class DunklError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DunklError, ValueError):
    """Argument outside the domain where a formula or solution is defined."""


class SingularPointError(DomainError):
    """Operator evaluated on (or too close to) a coordinate plane or angular pole."""


class QuadratureError(DunklError, ArithmeticError):
    """Quadrature failed to converge under order doubling."""


class GridTooCoarseError(DunklError, ArithmeticError):
    """Finite-difference eigenvalues did not converge to the requested tolerance."""


class NonBindingError(DunklError):
    """Fewer bound states than requested were found on the grid."""
