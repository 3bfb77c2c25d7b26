"""Exception hierarchy shared by all catvortex modules."""


class CatVortexError(Exception):
    """Base class for all catvortex errors."""


class CollisionError(CatVortexError):
    """Two vortices are closer than the configured interaction floor.

    Raised instead of silently regularizing: conservation diagnostics
    would be corrupted by evaluating the kernel past the floor.
    """


class StepFailure(CatVortexError):
    """The adaptive step controller could not meet its tolerance."""


class NoRootError(CatVortexError):
    """Bracket expansion failed to straddle a root (corrupted inputs)."""


class UnsupportedError(CatVortexError):
    """Requested configuration is outside the supported regime."""


class InadmissibleError(CatVortexError):
    """Relative separation lies outside the energetically allowed window."""


class PerturbationTooLarge(CatVortexError):
    """Eigenvector seed amplitude exceeds the linear-regime bound."""


class WindowEmpty(CatVortexError):
    """No samples fall inside the requested regression window."""
