"""Exception types shared across the package."""


class QdiceError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(QdiceError):
    """Operands act on incompatible subsystems or dimensions."""


class NonOrthogonalBasisError(QdiceError):
    """Measurement basis states are not mutually orthogonal."""


class DegenerateProtocolError(QdiceError):
    """Protocol parameters make the analysis degenerate (e.g. division by zero)."""


class ParameterRangeError(QdiceError):
    """A protocol parameter lies outside its valid range."""


class ResolutionTooCoarseError(QdiceError):
    """Requested brute-force grid resolution is too coarse to be meaningful."""


class InvalidBiasError(QdiceError):
    """A declared per-stage bias exceeds the honest stage-win probability."""


class InfeasibleVariantError(QdiceError):
    """A root solve found no sign change on the variant's feasible range."""


class CrossCheckError(QdiceError):
    """Two independent computations of the same quantity disagree beyond tolerance."""
