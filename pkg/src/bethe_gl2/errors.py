"""Exception hierarchy shared by all subsystems."""


class BetheGl2Error(Exception):
    """Base class for all library errors."""


class RingMismatchError(BetheGl2Error):
    """Operands live in incompatible coefficient rings."""


class NotInvertibleError(BetheGl2Error):
    """Element has no inverse in its ring."""


class ShapeError(BetheGl2Error):
    """Matrix or polynomial has the wrong shape for the operation."""


class InvalidWeightError(BetheGl2Error):
    """Not a partition with at most two parts."""


class RepeatedPointError(BetheGl2Error):
    """Evaluation points must be pairwise distinct.

    Coinciding points would require genuine cyclic Weyl-module factors,
    which this library does not construct.
    """


class DegreeBoundError(BetheGl2Error):
    """A symbolic vector outgrew its declared degree bound."""


class PrecisionInsufficientError(BetheGl2Error):
    """Numeric eigenvalue clusters are closer than the separation margin."""


class InternalConsistencyError(BetheGl2Error):
    """An identity that holds by construction failed (must never fire)."""


class TheoremViolationError(BetheGl2Error):
    """An identity that must hold by theory failed on concrete data.

    This is raised, never caught internally: it indicates either corrupted
    input or a genuine bug, and the message carries the offending data.
    """


class GenericityError(BetheGl2Error):
    """Randomly drawn data failed a genericity requirement (caller may retry)."""


class MatchCountError(GenericityError):
    """A uniqueness claim matched zero or several candidates.

    Distinguished from plain genericity rejections (degenerate input data):
    for admissible inputs this signals a genuine claim failure.
    """


class IndicialError(BetheGl2Error):
    """Second-order operator does not satisfy the required indicial equation."""
