"""Exception hierarchy shared across the engine."""


class TaguchiError(Exception):
    """Base class for all engine errors."""


class ConfigError(TaguchiError):
    """Invalid project configuration or plan document."""


class CapacityError(ConfigError):
    """Factor count outside what the orthogonal array can hold."""


class PlanFormatError(ConfigError):
    """Unknown plan format tag or unparseable plan document."""


class DegenerateMetricError(TaguchiError):
    """A metric or response fell outside the domain of a transform.

    Raised instead of silently clamping: a clamped value would corrupt the
    signal-to-noise ranking downstream.
    """


class IncompleteResultsError(TaguchiError):
    """Analysis requested on a store that is missing rows."""

    def __init__(self, missing_rows, message=None):
        self.missing_rows = tuple(missing_rows)
        super().__init__(
            message or f"results missing for rows {list(self.missing_rows)}"
        )


class SaturatedDesignError(TaguchiError):
    """No error degrees of freedom remain, so no F test is possible."""


class StoreError(TaguchiError):
    """Result store rejected a record (wrong plan hash, corrupt log line)."""
