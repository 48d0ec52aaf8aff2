"""Domain errors raised by the library.

The CLI maps any :class:`ItinlabError` to exit status 2 and prints the
class name on stderr, so the names here are part of the public surface.
"""


class ItinlabError(Exception):
    """Base class for all domain errors."""


class NotAPermutation(ItinlabError):
    pass


class IsCoxeterElement(ItinlabError):
    pass


class NotGroupElement(ItinlabError):
    pass


class NotTNN(ItinlabError):
    pass


class PatternUnmatched(ItinlabError):
    pass


class NotInCell(ItinlabError):
    pass


class ArgNotTotallyPositive(ItinlabError):
    pass


class Singular(ItinlabError):
    pass


class OutOfChart(ItinlabError):
    pass


class FrameDegenerate(ItinlabError):
    pass


class IdentityLetter(ItinlabError):
    pass


class ZeroPolynomial(ItinlabError):
    pass


class DegenerateFamily(ItinlabError):
    pass


class NotDimZero(ItinlabError):
    pass


class NotDimOne(ItinlabError):
    pass


class Uncovered(ItinlabError):
    pass


class DimTooHigh(ItinlabError):
    pass


class ParseError(ItinlabError):
    pass
