"""Exception hierarchy shared by the whole package."""


class PphError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PphError):
    """Rejected user input: foreign symbols, empty patterns, bad requests."""


class FormatError(InputError):
    """A file could not be parsed or failed validation on load."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvariantError(PphError):
    """An internal structural invariant was violated; indicates a bug."""
