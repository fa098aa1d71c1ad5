"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Mismatched or invalid dimensions (wrong subsystem index, channel/state size, ...)."""


class InvariantError(ValueError):
    """A physical invariant failed (Hermiticity, trace, positivity, completeness).

    Carries the measured residual so callers can report how badly the
    input misses the invariant.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = float(residual)


class FormatError(ValueError):
    """Malformed JSON input. ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"field '{field}': {message}")
        self.field = field
