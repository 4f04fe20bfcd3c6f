"""Exception hierarchy.  CLI exit codes hang off these classes."""


class MslabError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 3


class DomainError(MslabError, ValueError):
    """A point lies outside the domain an operation requires, or domains differ."""


class InputError(MslabError, ValueError):
    """Malformed arguments: bad lengths, non-monotone samples, duplicates."""


class TruncationError(MslabError):
    """A truncated infinite object has no finite tail bound."""


class RegularityError(MslabError):
    """A boundary quantity was requested where the Ahern-Clark test fails."""


class PreconditionError(MslabError):
    """A documented precondition does not hold (e.g. exceptional Clark parameter)."""


class NumericalError(MslabError):
    """A numerical procedure failed to reach its tolerance."""

    def __init__(self, msg, **data):
        super().__init__(msg)
        self.data = data


class ConfigError(MslabError):
    """Scenario configuration rejected; carries the violated condition."""

    exit_code = 2


class ExtractionError(MslabError):
    """Greedy Riesz extraction ran out of candidates before reaching its target."""

    def __init__(self, msg, indices, accumulated):
        super().__init__(msg)
        self.indices = list(indices)
        self.accumulated = accumulated
