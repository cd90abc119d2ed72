"""Exception types raised across the package."""


class AmnError(Exception):
    """Base class for all library errors."""


# exact linear algebra
class AmbientMismatch(AmnError):
    pass


class NotASubspace(AmnError):
    pass


class OrthogonalUnsupportedField(AmnError):
    pass


class NotInvariant(AmnError):
    pass


class ZeroPolynomial(AmnError):
    pass


# complexes
class ValidationError(AmnError):
    """Malformed complex or map input."""


class BadVertexIndex(ValidationError):
    pass


class NotFaceClosed(ValidationError):
    pass


class DegreeOutOfRange(AmnError):
    pass


class NotASubcomplex(AmnError):
    pass


# real-valued invariants and configurations
class NegativeMeasure(AmnError):
    """Box measure inconsistency; indicates a bug, never a user error."""


class CardinalityMismatch(AmnError):
    pass


class SpaceMismatch(AmnError):
    pass


# angle-valued invariants
class CocycleViolation(ValidationError):
    pass


class MissingWinding(ValidationError):
    pass


class DegenerateClass(AmnError):
    """The cohomology class of the angle map is zero."""


class NotStabilized(AmnError):
    def __init__(self, message, last_windows=None):
        super().__init__(message)
        self.last_windows = last_windows


class ClassMismatch(AmnError):
    pass


class RelationViolated(AmnError):
    pass


# relations / G2 representations
class DimMismatch(AmnError):
    pass


class InducedNotAutomorphism(AmnError):
    pass


class SingularT(AmnError):
    pass


class BookkeepingFailure(AmnError):
    pass
