"""Exception hierarchy shared by the engine and the command line."""


class WGaussError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(WGaussError, ValueError):
    """Input violates a precondition (wrong dimension, non-homogeneous form, ...)."""


class DimensionError(InvalidInputError):
    """Shapes of matrices or vectors do not agree."""


class UndefinedZetaError(InvalidInputError):
    """``h`` does not divide the canonical degree ``xi``."""


class UnsupportedTwistError(InvalidInputError):
    """Twist outside the supported range for cotangent sections."""


class CertificationError(WGaussError):
    """Computed Hilbert function disagrees with the complete-intersection series.

    The defining forms are then not a regular sequence (at least up to the
    reported degree) and the object is not a complete intersection.
    """

    def __init__(self, degree, computed, expected):
        self.degree = degree
        self.computed = computed
        self.expected = expected
        super().__init__(
            f"regular-sequence certification failed in degree {degree}: "
            f"dim (S/I)_{degree} = {computed}, series predicts {expected}"
        )


class SpecParseError(WGaussError, ValueError):
    """A curve-spec document could not be parsed."""
