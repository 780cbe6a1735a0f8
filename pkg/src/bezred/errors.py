"""Exception hierarchy shared by the library and the command line."""


class BezredError(Exception):
    """Base class for all library errors."""


class ParseError(BezredError, ValueError):
    """A ring string, element literal or matrix document could not be parsed."""


class RingMismatchError(BezredError, ValueError):
    """Operands do not belong to the same ring."""


class InfiniteRingError(BezredError, ValueError):
    """An operation that needs a finite ring was given an infinite one."""


class PreconditionError(BezredError, ValueError):
    """Inputs violate an operation's precondition (e.g. not comaximal)."""


class NotUnimodularError(PreconditionError):
    """The entries of a matrix do not generate the unit ideal."""


class WitnessNotFoundError(BezredError):
    """A bounded witness search was exhausted without success."""


class NotAdequateError(BezredError):
    """No adequate factorization exists for the requested pair."""


class RingTooLargeError(BezredError, ValueError):
    """A brute-force oracle was asked to enumerate a ring above its cap."""


class UnsupportedRingError(BezredError, ValueError):
    """The operation is only defined for some ring families."""
