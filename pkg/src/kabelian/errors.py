"""Exception types shared across the package."""


class KabelianError(Exception):
    """Base class for all library errors."""


class ParameterError(KabelianError, ValueError):
    """An argument violates an operation's precondition."""


class PrecisionError(KabelianError):
    """A rational slope approximant is too coarse for the requested prefix.

    Raised when floor(slope*n + intercept) could differ between the supplied
    approximant and the irrational it stands for, somewhere in the range.
    """

    def __init__(self, position, message=None):
        self.position = position
        super().__init__(message or f"insufficient slope precision at position {position}")


class InsufficientWindowError(KabelianError):
    """A factor length exceeds the available prefix."""


class ConvergenceError(KabelianError):
    """A computation needed a converged complexity value that the window
    policy could not provide within its cap."""
