class ContestError(Exception):
    """Base class of every error raised by the solver library."""


class InvalidContest(ContestError, ValueError):
    pass


class KernelSpecError(ContestError, ValueError):
    pass


class UnsupportedOrder(ContestError):
    pass


class DomainError(ContestError, ValueError):
    pass


class InvalidKernel(ContestError):
    pass


class NoRootInUnit(ContestError):
    pass


class ThresholdNotFound(ContestError):
    pass


class IdentityMismatch(ContestError):
    """Recursive and measure-based inverted best responses disagree."""


class OutOfRange(ContestError, ValueError):
    pass


class TooLarge(ContestError):
    pass


class NoFixedPoint(ContestError):
    pass


class NoConvergence(ContestError):
    pass
