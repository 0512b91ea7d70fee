"""Exception types raised across the package.

Everything inherits from Io500KitError so callers can catch the whole
family; the CLI maps EmptyInputError to exit code 2 and the rest to 1.
"""


class Io500KitError(Exception):
    pass


class ParseError(Io500KitError):
    """Malformed input text. Carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SchemaError(Io500KitError):
    """Input is structurally valid but missing required columns/fields."""


class ValidationError(Io500KitError):
    """Parsed data violates a hard invariant (e.g. duplicate ranks)."""


class LoadError(Io500KitError):
    """A submission package could not be assembled."""


class EmptyInputError(Io500KitError):
    """No usable records after parsing/filtering."""


class NormalizationError(Io500KitError):
    """Per-node or per-process normalization is impossible for a record."""


class IncompletePhasesError(Io500KitError):
    """A composite score needs phase values that are absent."""

    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__("missing phases: " + ", ".join(str(p) for p in self.missing))


class DegenerateInputError(Io500KitError, ValueError):
    """Statistic undefined for this input (zero variance, all-zero, ...)."""


class SampleSizeError(Io500KitError, ValueError):
    """Too few observations or groups for the requested statistic."""


class NotAvailableError(Io500KitError):
    """Requested signal is absent from the data (distinct from zero)."""


class ConfigError(Io500KitError):
    """Invalid generator or pipeline configuration."""
