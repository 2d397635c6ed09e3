"""Exception hierarchy shared by all doublekit modules."""


class DoubleKitError(Exception):
    """Base class for every error raised by doublekit."""


class NotAGroup(DoubleKitError, ValueError):
    """A multiplication table violates a group axiom.

    ``witness`` holds the offending tuple of element indices (may be empty).
    """

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotAPermutation(DoubleKitError, ValueError):
    pass


class ClosureTooLarge(DoubleKitError):
    pass


class DegeneracyNotResolved(DoubleKitError):
    pass


class NoMatch(DoubleKitError):
    pass


class SplitFailed(DoubleKitError):
    pass


class GroupMismatch(DoubleKitError, ValueError):
    pass


class TensorGateExceeded(DoubleKitError):
    pass


class NonIntegerFusion(DoubleKitError):
    pass


class NotUnimodular(DoubleKitError, ValueError):
    pass


class UnsupportedOutsideComm(DoubleKitError, ValueError):
    pass


class NotDiagonal(DoubleKitError):
    pass


class ZeroFirstRow(DoubleKitError):
    pass


class ParseError(DoubleKitError, ValueError):
    pass
