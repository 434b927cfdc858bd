"""Exception hierarchy shared by every module."""


class SplitRootsError(Exception):
    """Base class for all package errors."""


class NonSquarefree(SplitRootsError):
    pass


class PrecisionExhausted(SplitRootsError):
    pass


class WrongDegree(SplitRootsError):
    pass


class NotSplit(SplitRootsError):
    pass


class InvalidDegreeBound(SplitRootsError):
    pass


class DegreeTooLarge(SplitRootsError):
    pass


class NotClosed(SplitRootsError):
    pass


class NotInGhat(SplitRootsError):
    pass


class MixedRadicands(SplitRootsError):
    pass


class RankDeficient(SplitRootsError):
    pass


class Unbounded(SplitRootsError):
    pass


class OutOfRange(SplitRootsError):
    pass


class NotCoprime(SplitRootsError):
    pass


class DoesNotDivide(SplitRootsError):
    pass


class NoneFound(SplitRootsError):
    pass


class NotCongruent(SplitRootsError):
    pass


class InsufficientSamples(SplitRootsError):
    pass


class MissingArtinData(SplitRootsError):
    pass


class NoMatch(SplitRootsError):
    pass


class MissingVolume(SplitRootsError):
    pass


class CheckpointMismatch(SplitRootsError):
    pass


class ConfigError(SplitRootsError):
    pass
