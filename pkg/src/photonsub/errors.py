"""Exception types raised by photonsub."""


class PhotonSubError(Exception):
    """Base class for all library errors."""


class RangeError(PhotonSubError, ValueError):
    """An argument lies outside the supported range."""


class OverflowGuard(PhotonSubError, RuntimeError):
    """Adaptive truncation hit the hard cap before reaching the tolerance."""


class DimensionError(PhotonSubError, ValueError):
    """A dense Fock basis is too small for the stored coefficients."""


class SizeError(PhotonSubError, ValueError):
    """A dense problem exceeds the allowed size."""


class ConvergenceError(PhotonSubError, RuntimeError):
    """An iterative eigensolver ran out of sweeps."""


class SingularityError(PhotonSubError, ArithmeticError):
    """A closed-form expression is evaluated at a singular point."""


class PhaseStepError(PhotonSubError, ArithmeticError):
    """A phase step along a winding loop is too large to unwrap safely."""


class MagnitudeError(PhotonSubError, ArithmeticError):
    """The field is too close to zero on a winding loop."""


class DegenerateHerald(PhotonSubError, ArithmeticError):
    """A heralding outcome has (numerically) zero probability."""
