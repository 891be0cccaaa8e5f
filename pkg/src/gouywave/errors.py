"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`GouyWaveError`.
Input problems additionally derive from :class:`ValueError` so that generic
callers can catch them without importing this module.
"""


class GouyWaveError(Exception):
    """Base class for all library errors."""


class InvalidParameter(GouyWaveError, ValueError):
    pass


class NonPositiveFrequency(InvalidParameter):
    pass


class NonFiniteParameter(InvalidParameter):
    pass


class PearsonOutOfRange(InvalidParameter):
    pass


class NotResonant(InvalidParameter):
    """Operation only defined for omega == omega0."""


class UnsupportedOrder(InvalidParameter):
    pass


class ExpansionPole(InvalidParameter):
    """High-frequency series evaluated too close to a tan(omega t) pole."""


class StepTooLarge(InvalidParameter):
    """Time sampling too coarse to track Gouy branch changes."""


class EmptyWindow(InvalidParameter):
    pass


class KernelSingular(InvalidParameter):
    """Harmonic propagator evaluated at (or too close to) a focal time."""


class TruncationTooTight(GouyWaveError):
    pass


class NotGaussian(GouyWaveError):
    pass


class NotPositiveDefinite(InvalidParameter):
    pass


class UncertaintyViolation(InvalidParameter):
    """Covariance below the Robertson-Schroedinger bound det >= 1/4."""


class GridTooCoarse(InvalidParameter):
    pass


class NotConverged(GouyWaveError):
    pass


class StepTooSmall(InvalidParameter):
    pass


class PurityDivergence(GouyWaveError):
    pass


class ZeroInformation(GouyWaveError):
    pass


class LengthMismatch(InvalidParameter):
    pass


class NonPositiveProbability(InvalidParameter):
    pass


class ParseError(InvalidParameter):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(InvalidParameter):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class IoFailure(GouyWaveError, OSError):
    pass
