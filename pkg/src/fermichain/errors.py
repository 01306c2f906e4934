"""Exception hierarchy shared by all fermichain modules."""


class FermichainError(Exception):
    """Base class for every error raised by the package."""


class ConstraintError(FermichainError, ValueError):
    """Couplings violate the hermiticity / pairing symmetry constraints."""


class DomainError(FermichainError, ValueError):
    """Input lies outside the domain of an operation."""


class CriticalModelError(DomainError):
    """The model is gapless (or too close to it) for the requested method."""


class NumericIntegrityError(FermichainError, ArithmeticError):
    """A numerical object failed an internal consistency check."""


class GeometryError(FermichainError):
    """The Riemann surface construction could not be carried out."""


class NonGenericCurveError(GeometryError):
    """The curve w^2 = P(z) has coincident branch points."""


class AccuracyError(FermichainError, ArithmeticError):
    """A numerical procedure did not reach its accuracy target."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})
