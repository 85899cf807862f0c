"""Exception hierarchy.

Every error raised by the library derives from :class:`SzpiroError`.  Input
problems additionally derive from :class:`ValueError` so callers that only
care about "bad input" can catch that.
"""


class SzpiroError(Exception):
    """Base class for all library errors."""


class InputError(SzpiroError, ValueError):
    """Malformed or inconsistent input."""


# poly_core
class InvalidRing(InputError):
    pass


class UnknownVariable(InputError):
    pass


class PolySyntaxError(InputError):
    pass


class ModulusViolation(InputError):
    pass


class RingMismatch(InputError):
    pass


class ArityMismatch(InputError):
    pass


class ZeroInput(InputError):
    pass


class CharacteristicObstruction(SzpiroError):
    pass


class NotDivisible(SzpiroError, ArithmeticError):
    pass


# groebner
class ResourceLimit(SzpiroError):
    """The configured S-pair budget was exhausted."""


class RankMismatch(InputError):
    pass


class ZeroDivisorQuery(InputError):
    pass


# polymat
class EmptyMatrix(InputError):
    pass


class NotSquare(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class ParameterViolation(InputError):
    pass


class SymmetryBroken(SzpiroError):
    pass


# resolution
class ComplexNotZero(SzpiroError):
    pass


class InhomogeneousEntry(SzpiroError):
    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class NotAnIsomorphism(SzpiroError):
    pass


class SkewDegenerate(SzpiroError):
    pass


class CharTwo(InputError):
    pass


class NotSkew(InputError):
    pass


class NotUnimodular(SzpiroError):
    pass


class NoUnitPivot(SzpiroError):
    pass


class SymmetrizeFailed(SzpiroError):
    pass


# ring_builder
class NoRegularElementFound(SzpiroError):
    pass


class NotClosed(SzpiroError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class AxiomViolation(SzpiroError):
    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


# regularizer
class HintProductMismatch(InputError):
    pass


class HintsNotCoprime(InputError):
    pass


class NoMinorOutsideIdeal(SzpiroError):
    pass


class StepVerificationFailed(SzpiroError):
    pass


class SmallFieldExhausted(SzpiroError):
    pass


class VerificationFailed(SzpiroError):
    def __init__(self, message, gcd=None, report=None):
        super().__init__(message)
        self.gcd = gcd
        self.report = report
