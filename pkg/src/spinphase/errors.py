"""Exception types shared across the package."""


class SpinPhaseError(Exception):
    """Base class for all spinphase errors."""


class NonHermitianGenerator(SpinPhaseError):
    """A unitary exponential was requested for a non-Hermitian generator."""


class OddParticleNumber(SpinPhaseError):
    """A construction that needs integer total spin got an odd particle number."""


class MeanSpinZero(SpinPhaseError):
    """The mean spin vector vanishes, so the spin-squeezing ratio is undefined."""


class DivergentAtQuadrature(SpinPhaseError):
    """Ramsey precision diverges where the signal slope cos(phi) vanishes."""


class GridTooCoarse(SpinPhaseError):
    """A sampling grid is below the resolution needed for exact reconstruction."""


class GridMismatch(SpinPhaseError):
    """Two grids expected to share nodes do not."""


class MagnitudeOverflow(SpinPhaseError):
    """A log-factorial intermediate left the range that is safe in float64."""


class NoInteriorMinimum(SpinPhaseError):
    """A coarse scan found no interior local minimum (bracket misconfigured)."""


class InsufficientData(SpinPhaseError):
    """Not enough data points for the requested fit."""
