"""Exception hierarchy shared by every hedgeprop module."""


class HedgePropError(Exception):
    """Base class for all errors raised by hedgeprop."""


class ParseError(HedgePropError):
    pass


class SizeMismatch(HedgePropError):
    pass


class UnknownSymbol(HedgePropError):
    pass


class DuplicatePairing(HedgePropError):
    pass


class ArityMismatch(HedgePropError):
    pass


class LambdaAtRoot(HedgePropError):
    pass


class UnboundVariable(HedgePropError):
    pass


class InvalidJustification(HedgePropError):
    pass


class InvalidSubstitution(HedgePropError):
    pass


class RankMismatch(HedgePropError):
    pass


class PartialTable(HedgePropError):
    pass


class UnknownBuiltin(HedgePropError):
    pass


class OutOfUniverse(HedgePropError):
    pass


class EmptySpace(HedgePropError):
    pass


class PreconditionViolated(HedgePropError):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
