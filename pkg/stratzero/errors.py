"""
Exception hierarchy for stratzero.

Classification outcomes are verdicts, not exceptions; these are raised
only for malformed input, caller bugs and failed certificates.
"""


class StratZeroError(Exception):
    """Base class for all stratzero errors."""


class RationalParseError(StratZeroError, ValueError):
    """Raised when a token is not an integer, fraction or finite decimal."""


class DimensionError(StratZeroError, ValueError):
    """Raised when matrix or vector shapes do not fit together."""


class PreconditionError(StratZeroError, ValueError):
    """Raised when an operation is called outside its documented domain."""


class SizeGuardError(StratZeroError):
    """Raised when an exhaustive routine refuses a game that is too large."""


class GameFileError(StratZeroError, ValueError):
    """Raised when a game file cannot be parsed."""


class InvariantBreach(StratZeroError):
    """Raised when a computed certificate does not hold exactly."""
