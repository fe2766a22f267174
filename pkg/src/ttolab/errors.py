"""Exception types shared across the package."""


class TTOLabError(Exception):
    """Base class for all package errors."""


class PoleError(TTOLabError, ValueError):
    """Evaluation requested at a pole of a rational map."""


class DomainError(TTOLabError, ValueError):
    """An argument lies outside the region an operation is defined on."""


class LevelSetError(TTOLabError, ValueError):
    """A level set is not simple where simplicity is required."""


class QuadratureError(TTOLabError, RuntimeError):
    """Circle quadrature failed to reproduce an exact identity."""


class BasisMismatchError(TTOLabError, ValueError):
    """Operators over different model-space bases were combined."""


class RecombinationError(TTOLabError, RuntimeError):
    """A composed Blaschke product failed its pointwise residual check."""


class RankDeficiencyError(TTOLabError, RuntimeError):
    """A power basis did not span the expected number of dimensions."""
