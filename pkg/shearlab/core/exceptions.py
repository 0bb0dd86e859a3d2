"""Exception hierarchy shared by every shearlab service."""


class ShearLabError(Exception):
    """Base class for all shearlab errors."""


class NumericalError(ShearLabError):
    """A numerical routine failed to produce a trustworthy value."""


class NonConvergenceError(NumericalError):
    """Quadrature or series budget exhausted before reaching tolerance."""


class NonFiniteError(NumericalError):
    """A NaN or infinity appeared where a finite value is required."""


class DomainError(ShearLabError, ValueError):
    """Argument outside the domain of the operation."""


class PoleError(DomainError):
    """Argument sits on a pole of the function being evaluated."""


class ParamError(ShearLabError, ValueError):
    """Invalid special-function parameters."""


class UnsupportedError(ShearLabError):
    """The requested variant has no formula in the catalog."""


class ResonanceError(ShearLabError):
    """Pole direction coincides with a root of unity; use the resonant formula."""


class ParityError(ShearLabError, ValueError):
    """Operation requires a polygon with an odd number of sides."""


class NotLiftableError(ShearLabError, ValueError):
    """Dilatation is not the square of an analytic function."""


class RootIndexError(ShearLabError, IndexError):
    """Root-of-unity index that the formula excludes."""
