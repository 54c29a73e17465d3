"""Exception hierarchy shared by all modules."""


class ConicTreeError(Exception):
    """Base class for all domain errors raised by this package."""


class ZeroInputError(ConicTreeError):
    """A nonzero field element was required."""


class UnsupportedFieldError(ConicTreeError):
    """The constant-field kind has no exact decision procedure for the request."""


class FiniteIndexError(ConicTreeError):
    """Witnesses for infinitely many norm cosets were requested, but the index is finite."""


class ParseError(ConicTreeError):
    """A field-element or curve-specification string does not match the grammar."""


class HasRationalPointError(ConicTreeError):
    """The conic has a rational point, so it defines no nonrational function field."""


class DegenerateConicError(ConicTreeError):
    """The quadratic form factors; it does not define a conic."""


class InvalidCurveError(ConicTreeError):
    """Curve construction failed validation; carries the violation list."""

    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class NotIntegralAtInfinityError(ConicTreeError):
    """An expansion at the infinite place was requested for an element with a pole there."""


class SingularMatrixError(ConicTreeError):
    """A matrix with nonzero determinant was required."""


class NotInGError(ConicTreeError):
    """The matrix is not in GL2 of the coordinate ring (integral entries, unit determinant)."""


class ZeroTupleError(ConicTreeError):
    """All four quaternion coordinates vanish."""


class ConstructionFailedError(ConicTreeError):
    """An orbit-verification construction failed; this falsifies a claimed identity."""


class VerificationIncompleteError(ConicTreeError):
    """A quotient build was requested before its orbit verifications passed."""
