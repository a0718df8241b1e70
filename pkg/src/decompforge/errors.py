"""Exception types shared across the package."""


class InvalidInstanceError(ValueError):
    """The input violates a documented precondition of the operation."""


class InvalidInputError(ValueError):
    """A parameter is malformed (dimension mismatch, out-of-range value)."""


class InvalidBarrierError(ValueError):
    """A barrier construction was requested with parameters that make it vacuous."""


class TooLargeError(ValueError):
    """Instance exceeds the configured bound of an exhaustive routine."""


class ImpossibleStateError(RuntimeError):
    """An internal invariant failed; indicates a precondition breach upstream."""


class ConfigError(ValueError):
    """An experiment configuration is unusable."""
