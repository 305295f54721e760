"""Exception types shared across the package."""


class WindAreaError(ValueError):
    """Base class for all windarea errors."""


class NonUniformPath(WindAreaError):
    """Raised when an operation requires uniform time spacing."""


class BadRange(WindAreaError):
    """Raised for an empty or inverted vertex range."""


class NotAVertex(WindAreaError):
    """Raised when a dissection refers to a time that is not a path vertex."""


class BadExponent(WindAreaError):
    """Raised for a p-variation exponent p < 1."""


class PointOnCurve(WindAreaError):
    """Raised when a winding query point lies within tolerance of the curve."""


class BadWindow(WindAreaError):
    """Raised for an empty or out-of-range tail-averaging window."""


class TooFewSamples(WindAreaError):
    """Raised when a fit needs more samples than were given."""


class BadRate(WindAreaError):
    """Raised for a Poisson splitting rate below 1."""
