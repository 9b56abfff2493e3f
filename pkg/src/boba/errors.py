"""Exception types shared across the package."""

__all__ = ["BobaError", "MalformedGraphError", "ParseError", "UndefinedMetricError"]


class BobaError(Exception):
    """Base class for all data errors raised by this package."""


class MalformedGraphError(BobaError):
    """A graph container violates its structural invariants."""


class ParseError(BobaError):
    """An input file could not be parsed.

    Carries the offending path and, when known, the 1-based line number.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
            if line is not None:
                prefix += f"{line}:"
            prefix += " "
        super().__init__(prefix + message)


class UndefinedMetricError(BobaError):
    """A locality metric is undefined for the given input (e.g. no edges)."""
