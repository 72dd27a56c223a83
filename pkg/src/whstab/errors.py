"""Exception hierarchy for the weakly-hard stability toolkit."""


class WhStabError(Exception):
    """Base class for every error raised by whstab."""


class ConstraintError(WhStabError, ValueError):
    """A weakly-hard constraint or constraint set is malformed."""


class MalformedSequence(WhStabError, ValueError):
    """An outcome string violates Rule 1 or the strategy's successor relation."""


class CapExceeded(WhStabError, ValueError):
    """A size parameter is above its configured cap."""


class EmptyLanguage(WhStabError):
    """No infinite run satisfies the constraint set from ideal startup."""


class StrategyMismatch(WhStabError, ValueError):
    """Two constraint sets are evaluated under different strategies."""


class DimensionMismatch(WhStabError, ValueError):
    """Matrix or vector shapes do not agree."""


class AlphabetMismatch(WhStabError, ValueError):
    """A graph and a matrix set are built over different alphabets."""


class NonSquare(DimensionMismatch):
    """A square matrix was required."""


class ConfigError(WhStabError, ValueError):
    """An analysis configuration failed to parse or validate."""
