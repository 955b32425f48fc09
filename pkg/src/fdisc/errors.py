"""Exception hierarchy shared by every fdisc module."""


class FdiscError(ValueError):
    """Base class for domain and validation errors."""


class OddSizeError(FdiscError):
    pass


class NegativeWeightError(FdiscError):
    pass


class MassMismatchError(FdiscError):
    pass


class IndexOutOfRangeError(FdiscError, IndexError):
    pass


class SizeMismatchError(FdiscError):
    pass


class ZeroDeltaError(FdiscError):
    pass


class ThetaOutOfRangeError(FdiscError):
    pass


class NotHermitianError(FdiscError):
    pass


class NonNullSumError(FdiscError):
    pass


class OutOfDomainError(FdiscError):
    pass


class BadRangeError(FdiscError):
    pass


class MassMismatchPairError(FdiscError):
    pass


class EmptyGridError(FdiscError):
    pass


class StepSizeTooLargeError(FdiscError):
    """A descent step increased the loss; ``trace`` holds the run so far."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace
