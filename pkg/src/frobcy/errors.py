"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class FrobCYError(Exception):
    """Base class for all errors raised by frobcy."""


class FieldMismatchError(FrobCYError):
    """Operands live over different fields."""


class DimensionError(FrobCYError, ValueError):
    """Shapes of the operands do not compose."""


class SingularMatrixError(FrobCYError, ArithmeticError):
    pass


class AlgebraMismatchError(FrobCYError):
    """Modules (or maps) are defined over different algebras."""


class UnsupportedCharacteristicError(FrobCYError):
    """The structural criterion used is not decisive in positive characteristic."""


class NotSemisimpleError(FrobCYError):
    pass


class NotSplitError(FrobCYError):
    """Some block of the algebra is not a full matrix algebra over the ground field."""


class AsymmetricFormError(FrobCYError):
    pass


class FormError(FrobCYError):
    """A Frobenius form violates a precondition (zero weight, bad twist, inconsistent data)."""


class SingularPsiError(FrobCYError):
    """The map P* (x)_A M -> Hom_A(P, M) is not invertible (P is not projective)."""


class NotProjectiveError(FrobCYError):
    pass


class NotGeneratorError(FrobCYError):
    """The module does not contain every simple module as a summand."""


class DocumentError(FrobCYError):
    """Input document could not be turned into objects; ``code`` names the failure."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
