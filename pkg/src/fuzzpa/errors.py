"""Exception types shared across the package.

Plain ``ValueError`` is used for bad arguments to library functions; the
classes here mark problems the CLI maps to dedicated exit codes.
"""


class ConfigError(Exception):
    """A run configuration that cannot be executed (CLI exit code 2)."""


class ResourceLimitError(ConfigError):
    """A requested structure would exceed a configured size cap."""


class DataError(Exception):
    """A dataset that violates the input contract (CLI exit code 3)."""


class RaggedRowError(DataError):
    """A CSV row with a different number of columns than the header."""


class FeatureParseError(DataError):
    """A feature cell that does not parse as a real number."""


class SingleClassError(DataError):
    """A dataset whose label column contains fewer than two classes."""
