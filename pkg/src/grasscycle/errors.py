"""Exception hierarchy. Every error raised by the package derives from GrasscycleError."""


class GrasscycleError(Exception):
    pass


# field construction and arithmetic

class NonPrimeModulus(GrasscycleError, ValueError):
    pass


class PrimePowerUnsupported(NonPrimeModulus):
    """q is a prime power p^m with m > 1; only prime base fields are built."""


class WrongDegree(GrasscycleError, ValueError):
    pass


class NotIrreducible(GrasscycleError, ValueError):
    pass


class NotPrimitive(GrasscycleError, ValueError):
    pass


class DivisionByZero(GrasscycleError, ZeroDivisionError):
    pass


class LogOfZero(GrasscycleError, ValueError):
    pass


# subspaces

class ZeroSpan(GrasscycleError, ValueError):
    pass


class DimensionOutOfRange(GrasscycleError, ValueError):
    pass


# orbits

class InputInBaseField(GrasscycleError, ValueError):
    pass


class RatioInBaseField(GrasscycleError, ValueError):
    pass


class CollapsingAction(GrasscycleError):
    pass


# cycle construction

class NoTwistableRepresentative(GrasscycleError):
    pass


class ProductConditionFailed(GrasscycleError):
    pass


class SpecInvalid(GrasscycleError, ValueError):
    pass


class WindowSizeOutOfRange(GrasscycleError, ValueError):
    pass


# verification and search

class ZeroVectorInSequence(GrasscycleError, ValueError):
    pass


class SearchSpaceTooLarge(GrasscycleError):
    pass
