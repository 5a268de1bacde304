"""Exception types shared across the library."""


class ListAgreementError(Exception):
    """Base class for all library errors."""


class MixedDimensions(ListAgreementError):
    pass


class FaceNotInComplex(ListAgreementError):
    pass


class TopDimensionalFace(ListAgreementError):
    pass


class DimensionOutOfRange(ListAgreementError):
    pass


class DimensionTooHigh(ListAgreementError):
    pass


class BaseMismatch(ListAgreementError):
    pass


class NotARepresentationComplex(ListAgreementError):
    pass


class NotACycle(ListAgreementError):
    pass


class NotASimpleCycle(NotACycle):
    pass


class CoreNotInFace(ListAgreementError):
    pass


class NotAnEdge(ListAgreementError):
    pass


class NotACocycle(ListAgreementError):
    pass


class NotACoboundary(ListAgreementError):
    pass


class NotGenuine(ListAgreementError):
    pass


class LocalWitnessFailed(ListAgreementError):
    pass


class SearchSpaceTooLarge(ListAgreementError):
    pass


class NonpositiveGamma(ListAgreementError):
    pass


class InvalidParams(ListAgreementError):
    pass


class NoContainingFace(ListAgreementError):
    pass


class PreconditionUnsatisfiable(ListAgreementError):
    pass
