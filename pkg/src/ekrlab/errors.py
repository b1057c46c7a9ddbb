"""Exception types shared across the package."""


class EkrlabError(Exception):
    """Base class for all package errors."""


class InvalidInputError(EkrlabError, ValueError):
    """Parameters violate an operation's preconditions."""


class IndexRangeError(EkrlabError, IndexError):
    """A coordinate index lies outside the ground set [n]."""


class ResourceLimitError(EkrlabError, RuntimeError):
    """An enumeration cap or search budget was exhausted."""

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit
