"""Exception types raised by the firstroot package."""


class FirstRootError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateSlope(FirstRootError):
    """The curvature bound m is too small for the interval's derivative change.

    The shared denominator m*(x_right - x_left) + dz_right - dz_left of the
    knot formulas is <= 0; the caller must raise m or abort.
    """


class OutOfInterval(FirstRootError):
    """Evaluation point lies outside the interval of a support function."""


class NoZero(FirstRootError):
    """leftmost_zero was called on a support function whose minimum is positive."""


class NumericalDiscriminant(FirstRootError):
    """A discriminant that is non-negative in exact arithmetic came out
    negative beyond the rounding tolerance."""


class DegenerateInterval(FirstRootError):
    """Two trial abscissas are too close to form a usable interval."""


class BadInitialCondition(FirstRootError):
    """The objective is not strictly positive at the left margin."""


class NonFinite(FirstRootError):
    """A function or derivative evaluation produced a non-finite value."""


class DomainError(FirstRootError):
    """Argument outside the domain of a transfer function."""


class UnknownProblem(FirstRootError):
    """Problem identifier not present in the registry."""
