"""Exception types shared across the package.

The CLI maps these onto exit codes: DataFormatError -> 3,
DegeneracyError -> 4, any other ValueError -> 2 (usage).
"""


class DataFormatError(ValueError):
    """Malformed or inconsistent input data (bad rows, unsorted times, ...)."""


class DegeneracyError(ValueError):
    """A numerically degenerate configuration (p_hat = 1, zero magnitudes, ...)."""
