"""Exception and warning types shared across the package."""


class Radix2Error(ValueError):
    """Transform length along some axis is not a power of two."""

    def __init__(self, n, axis=None):
        self.n = n
        self.axis = axis
        where = f" along axis {axis!r}" if axis is not None else ""
        super().__init__(
            f"radix-2 FFT needs a power-of-two length{where}, got {n}"
        )


class LayoutError(ValueError):
    """Spectrum is in the wrong layout for the requested operation."""


class MetadataMismatchError(ValueError):
    """Two grids that must share metadata do not."""


class NonFiniteError(ArithmeticError):
    """A time integration produced NaN or Inf.

    ``time`` is the start of the step at which the state went non-finite.
    """

    def __init__(self, time, message=None):
        self.time = time
        super().__init__(message or f"non-finite state produced at t={time:.6g}")


class StabilityWarning(RuntimeWarning):
    """Time step exceeds the explicit RK4 stability limit."""


class GridFormatError(ValueError):
    pass


class MalformedHeaderError(GridFormatError):
    pass


class DimensionMismatchError(GridFormatError):
    pass


class ConfigError(ValueError):
    """Invalid run configuration; ``field`` names the offending key."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
