"""Error types raised by the engine.

Every error carries the name used in diagnostics (the class name), so the
command line can report ``NotStrictlyConvex: ...`` and similar.
"""


class ArtifactError(Exception):
    """Base class for all engine errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class ZeroVector(ArtifactError):
    pass


class PointOutsideDualCone(ArtifactError):
    pass


class OutsideSupport(ArtifactError):
    pass


class SupportMismatch(ArtifactError):
    pass


class UnboundedPolytope(ArtifactError):
    pass


class BudgetExceeded(ArtifactError):
    pass


class ZeroCone(ArtifactError):
    pass


class NotStrictlyConvex(ArtifactError):
    pass


class EmptySemigroup(ArtifactError):
    pass


class NotAFace(ArtifactError):
    pass


class KernelMeetsCone(ArtifactError):
    pass


class PeriodBudgetExceeded(ArtifactError):
    pass


class DenominatorCollapse(ArtifactError):
    pass


class NotSimplePole(ArtifactError):
    pass


class VolumeMismatch(ArtifactError):
    pass


class NotNormal(ArtifactError):
    pass


class PathMismatch(ArtifactError):
    """Two independent computations of the same series disagree."""
