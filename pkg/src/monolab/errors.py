"""Exception hierarchy shared by all monolab modules."""


class MonolabError(Exception):
    """Base class for every error raised by this package."""


# -- dense linear algebra -----------------------------------------------------

class NonSquareError(MonolabError):
    pass


class NotHermitianError(MonolabError):
    pass


class NotPSDError(MonolabError):
    pass


class NoConvergenceError(MonolabError):
    pass


# -- states -------------------------------------------------------------------

class NotNormalizedError(MonolabError):
    pass


class BadSubsystemIndexError(MonolabError):
    pass


class DimensionTooLargeError(MonolabError):
    pass


# -- measures -----------------------------------------------------------------

class BadSplitError(MonolabError):
    pass


class WrongDimensionError(MonolabError):
    pass


class UnsupportedError(MonolabError):
    pass


# -- inequality checkers ------------------------------------------------------

class NegativeInputError(MonolabError):
    pass


class DomainError(MonolabError):
    pass


class ZeroDivisorError(MonolabError):
    pass


class BaseMonogamyViolatedError(MonolabError):
    pass


class ExponentOutOfRangeError(MonolabError):
    pass


class ConditionViolatedError(MonolabError):
    """A hypothesis condition of a bound does not hold for the given values.

    ``step`` names the failing chain step (1-based; 0 for tripartite checks)
    and ``degenerate_tail`` flags the refused zero-tail case mid-chain.
    """

    def __init__(self, message, step=0, degenerate_tail=False):
        super().__init__(message)
        self.step = step
        self.degenerate_tail = degenerate_tail


class SlackTooLargeError(MonolabError):
    pass


class SlackTooSmallError(MonolabError):
    pass


class LengthMismatchError(MonolabError):
    pass


# -- sweep harness ------------------------------------------------------------

class UnsupportedSystemMeasurePairError(MonolabError):
    pass
