"""Exception types raised across the package."""


class HoverAUVError(Exception):
    """Base class for all package errors."""


class ConfigError(HoverAUVError):
    """Invalid or malformed configuration input."""


class PitchSingularity(HoverAUVError):
    pass


class MissingCoefficient(HoverAUVError):
    pass


class UnknownCoefficient(HoverAUVError):
    pass


class SingularInertia(HoverAUVError):
    pass


class InvalidGeometry(HoverAUVError):
    pass


class IntegrationTooCoarse(HoverAUVError):
    pass


class ReynoldsOutOfRange(HoverAUVError):
    pass


class OverSpeed(HoverAUVError):
    pass


class WrongKind(HoverAUVError):
    pass


class DimensionMismatch(HoverAUVError):
    pass


class RegionTooSmall(HoverAUVError):
    pass


class NumericalBlowup(HoverAUVError):
    pass


class NoOverlap(HoverAUVError):
    pass


class MalformedLog(HoverAUVError):
    """Log file that cannot be parsed; ``line`` is the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissionComplete(HoverAUVError):
    """Raised by the guidance law once the final waypoint has been passed."""


class MissionTimeout(HoverAUVError):
    """Mission did not finish in the allotted time; ``result`` holds the partial run."""

    def __init__(self, message: str, result=None):
        self.result = result
        super().__init__(message)
