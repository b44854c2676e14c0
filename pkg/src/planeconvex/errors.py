"""Exception types shared across the package."""


class GeometryError(Exception):
    pass


class EmptyInput(GeometryError):
    pass


class DegenerateRatio(GeometryError):
    pass


class NotSeparable(GeometryError):
    pass


class NotExternal(GeometryError):
    pass


class DegenerateNucleus(GeometryError):
    pass


class EdgeFreeRequired(GeometryError):
    pass


class BadRadius(GeometryError):
    pass


class PreconditionViolated(GeometryError):
    pass


class NoInitialWitness(GeometryError):
    pass


class SizeLimit(GeometryError):
    pass


class GenerationFailed(GeometryError):
    pass


class IndeterminateGeometry(GeometryError):
    """Raised when a floating-track margin is too small to classify."""
