"""Exception hierarchy for kwising."""


class KWIsingError(Exception):
    """Base class for all library errors."""


# map construction
class MapError(KWIsingError, ValueError):
    pass


class NotAnInvolution(MapError):
    pass


class NotAPermutation(MapError):
    pass


class ThetaOutOfRange(MapError):
    pass


class NonOrientableOrInconsistent(MapError):
    pass


class ParseError(MapError):
    pass


class SizeOverflow(KWIsingError):
    pass


class BacktrackTransition(KWIsingError, ValueError):
    pass


class HypothesisViolation(KWIsingError):
    """A cone-angle hypothesis required by the requested computation fails."""


# cohomology
class DisconnectedGraph(KWIsingError):
    pass


class InconsistentSystem(KWIsingError):
    pass


class UnsolvableSigns(KWIsingError):
    pass


class NotPlusMinusOne(KWIsingError):
    pass


class DegenerateForm(KWIsingError):
    pass


class GaussSumNotPM2g(KWIsingError):
    pass


# numerics
class NotASquare(KWIsingError):
    pass


class TooLarge(KWIsingError):
    pass


class GenusTooHigh(KWIsingError):
    pass


class GenusTooLow(KWIsingError):
    pass


class DivisionNearZero(KWIsingError):
    pass
