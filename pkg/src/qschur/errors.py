"""Exception hierarchy shared by every module of the package."""


class QSchurError(Exception):
    """Base class for all errors raised by qschur."""


class InputError(QSchurError):
    """Malformed or mathematically inadmissible input (CLI exit code 2)."""


class BadDiagonal(InputError):
    pass


class NotSymmetrizable(InputError):
    pass


class SymmetrizerOutOfRange(InputError):
    pass


class NotFiniteType(InputError):
    pass


class UnknownType(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class NotDominant(InputError):
    pass


class NotSaturated(InputError):
    pass


class EmptyPi(InputError):
    pass


class CartanMismatch(InputError):
    pass


class BoundTooSmall(InputError):
    pass


class PoleAtPoint(InputError):
    pass


class ZeroEvaluationPoint(InputError):
    pass


class ResourceBudgetExceeded(QSchurError):
    """A computation would exceed the configured dimension budget."""


class RankMismatch(QSchurError):
    """Gram rank disagrees with the Freudenthal multiplicity (internal error)."""


class MembershipFailure(QSchurError):
    """A cell element is not in the span of the generated algebra (internal error)."""


class Unstabilized(QSchurError):
    """Rewriting completion did not certify a finite normal-word set."""

    def __init__(self, message, system=None):
        super().__init__(message)
        self.system = system
