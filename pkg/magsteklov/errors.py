"""
Errors
======
Exception hierarchy shared by the engines and the command line.
"""


class MagSteklovError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(MagSteklovError, ValueError):
    """An argument is non-finite, out of range or otherwise unusable."""


class ConfigurationError(InvalidArgumentError):
    """A run or solver configuration violates its invariants."""


class StencilError(InvalidArgumentError):
    """A finite-difference stencil would leave the domain."""


class PoleError(MagSteklovError):
    """A Gamma pole or a vanishing Laguerre denominator was hit."""

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message)
        self.t = t


class AccuracyError(MagSteklovError):
    """A series did not converge within its term budget."""

    def __init__(self, message: str, tail: float):
        super().__init__(f"{message} (tail estimate {tail:.3e})")
        self.tail = tail


class TruncationError(AccuracyError):
    """A radial power series is not converged at r = 1."""


class CutoffInsufficientError(MagSteklovError):
    """The minimizing mode sits at the enumeration cutoff."""

    def __init__(self, k_max: int, mode: object):
        super().__init__(f"argmin reached the cutoff k_max={k_max} at {mode}")
        self.k_max = k_max
        self.mode = mode


class DegeneracyError(MagSteklovError):
    """Both regular branches satisfy the boundary condition."""


class NormalizationError(MagSteklovError):
    """The boundary value used for normalization vanishes."""
