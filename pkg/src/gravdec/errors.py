"""Exception types shared across the package."""


class GravdecError(Exception):
    """Base class for errors raised by this package."""


class GeometryError(GravdecError, ValueError):
    """Unsupported or inconsistent mass-distribution geometry."""


class PrecisionError(GravdecError, RuntimeError):
    """A statistical estimate failed to reach the requested precision.

    Carries the estimate and the achieved 99% confidence half-width so the
    caller can decide whether to retry with more samples.
    """

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class IntegrationError(GravdecError, RuntimeError):
    """Moment integration produced an unphysical covariance matrix."""


class ScenarioError(GravdecError, ValueError):
    """A scenario file failed to parse or validate.

    ``field`` names the offending entry where known; ``line`` is the 1-based
    location for parse failures.
    """

    def __init__(self, message, field=None, line=None):
        super().__init__(message)
        self.field = field
        self.line = line
