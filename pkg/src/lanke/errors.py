"""Exception hierarchy shared across the package."""


class LankeError(Exception):
    """Base class for every error raised by :mod:`lanke`."""


class SizeLimitError(LankeError):
    """A requested object is larger than the configured bound."""


class TheoremViolation(LankeError):
    """A computed quantity contradicts a proven identity.

    This always means a bug in the engine, never bad input.
    """


class NotACharacterError(LankeError):
    """A class function has a non-integral or negative multiplicity."""


class PrimeCollisionError(LankeError):
    """A matrix entry has a denominator divisible by the chosen prime."""


class NonInvariantSubspaceError(LankeError):
    """A linear map does not preserve the subspace it is restricted to."""


class ShapeError(LankeError):
    """A shape operation produced something that is not a partition."""
