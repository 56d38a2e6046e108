"""Exception hierarchy shared by all modules."""


class AltSurgeryError(Exception):
    """Base class for every error raised by this package."""


class DiagramError(AltSurgeryError, ValueError):
    """Problems with an input diagram code."""


class MalformedCode(DiagramError):
    pass


class NonRealizable(DiagramError):
    """A Gauss/DT/PD code that has no embedding in the sphere."""


class MultiComponent(DiagramError):
    """The code describes a link with more than one component."""


class NotAlternating(DiagramError):
    pass


class NotPrime(DiagramError):
    pass


class InvalidDiagram(DiagramError):
    pass


class MeridianSlope(AltSurgeryError, ValueError):
    """The operation is undefined for the meridian slope 1/0."""


class SlopeSyntaxError(AltSurgeryError, ValueError):
    pass


class TwistTooLarge(AltSurgeryError, ValueError):
    pass


class UnmatchedPattern(AltSurgeryError):
    """A prime diagram with small twist number matched no case of the census."""


class NotLinearPattern(AltSurgeryError, ValueError):
    pass


class DivisionByZeroInTail(AltSurgeryError, ZeroDivisionError):
    pass


class IntegerTangle(AltSurgeryError, ValueError):
    pass


class InvalidB(AltSurgeryError, ValueError):
    pass


class NonAlternatingResult(AltSurgeryError):
    pass


class FillMergesTwists(AltSurgeryError):
    pass


class ClassificationGap(AltSurgeryError):
    pass


class InternalInvariantError(AltSurgeryError, AssertionError):
    """Something the theory says cannot happen did happen."""
