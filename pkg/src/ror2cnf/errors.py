"""Exception hierarchy shared by every module."""


class RorError(Exception):
    """Base class for all errors raised by this package."""


class TautologyError(RorError):
    pass


class ArityError(RorError):
    pass


class UnknownId(RorError, KeyError):
    pass


class IncompleteAssignment(RorError):
    pass


class FormatSyntaxError(RorError):
    """Malformed token or line in a DIMACS, proof or digraph file."""


class HeaderMismatch(RorError):
    pass


class DanglingReference(RorError):
    pass


class NonmonotoneIds(RorError):
    pass


class EmptyClausePresent(RorError):
    pass


class NotReachable(RorError):
    pass


class NotDerivable(RorError):
    pass


class PivotMissing(RorError):
    pass


class ResolventTautological(RorError):
    pass


class BrokenChain(RorError):
    pass


class PreconditionViolated(RorError):
    pass


class NoSplit(RorError):
    pass


class ProvenanceLost(RorError):
    pass


class VerticesNotDistinct(RorError):
    pass


class SelfLoop(RorError):
    pass


class TooLarge(RorError):
    pass


class NotFromReduction(RorError):
    pass
