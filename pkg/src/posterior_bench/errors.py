"""Exception classes shared across the toolkit.

Each class carries the process exit code the command-line front end maps it
to, so library callers and scripts agree on failure classes.
"""


class PosteriorBenchError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ConfigError(PosteriorBenchError):
    """Invalid run configuration: schema violations, missing fields, bad values."""

    exit_code = 1


class IngestError(PosteriorBenchError):
    """Unreadable or malformed input data."""

    exit_code = 2


class NumericError(PosteriorBenchError, ValueError):
    """Invalid numeric arguments: non-positive hyperparameters, out-of-range
    probabilities, degenerate inputs to a statistical operation."""

    exit_code = 3
