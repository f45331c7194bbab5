"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Base class for all geometric and numerical contract violations."""


class DimensionMismatch(GeometryError):
    """Operands live in incompatible ambient dimensions."""


class NotSymmetric(GeometryError):
    """A matrix expected to be symmetric is not."""


class InvalidInput(GeometryError):
    """Input values violate a documented precondition."""


class HypothesisViolated(GeometryError):
    """Input objects do not satisfy the hypothesis of the requested test."""


class DegenerateDatum(GeometryError):
    """An umbilical datum is too close to the excluded square norms +1 or -1."""


class NotDegenerate(GeometryError):
    """Classification was requested for a configuration that is not degenerate."""


class NormalSearchFailed(GeometryError):
    """No spacelike normal could be extracted from a degenerate span."""


class NoReliableKernel(GeometryError):
    """The numerical kernel is too noisy to classify."""


class NoCommonTangent(GeometryError):
    """Two cooriented spheres admit no common tangent line of the requested kind."""


class OutsideBall(GeometryError):
    """A point expected inside the open unit ball lies on or outside it."""


class SchemaViolation(GeometryError):
    """A scene or report document does not match the expected schema."""


class InfeasibleParams(GeometryError):
    """Generator parameters lie outside their feasible range."""
