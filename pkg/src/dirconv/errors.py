"""Exception hierarchy.

``ParseError`` covers malformed text input (CLI exit status 1); everything
else derives from ``SemanticError`` (CLI exit status 2).
"""


class DirconvError(Exception):
    pass


class ParseError(DirconvError):
    pass


class SemanticError(DirconvError):
    pass


class MixedRings(SemanticError):
    pass


class WrongRing(SemanticError):
    pass


class NotInvertible(SemanticError):
    pass


class NotAUnit(NotInvertible):
    """Raised by ``fn_invert`` when the value at 1 is not a unit."""


class NotInMonoid(SemanticError):
    pass


class MonoidMismatch(SemanticError):
    pass


class NotASubmonoid(SemanticError):
    pass


class SpecMismatch(SemanticError):
    pass


class RankMismatch(SemanticError):
    pass


class ShapeMismatch(SemanticError):
    pass


class MissingPrimeValue(SemanticError):
    pass


class BoundTooSmall(SemanticError):
    pass


class OutsideWindow(SemanticError):
    """A value was requested beyond the region where it is known exactly."""


class DenominatorOutsideVariables(SemanticError):
    pass
