"""Shared exception types."""


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class GeneratorMismatchError(DomainError):
    """Two values over distinct infinitesimal generators were combined."""


class QueryTypeError(ValueError):
    """A query expression does not fit the selected model's event vocabulary."""


class ParseError(ValueError):
    """Syntax error carrying the offending position and the expected tokens.

    ``position`` is a 0-based character offset, or None when the input ended
    too early.  The message is already fully rendered for display.
    """

    def __init__(self, message: str, position: "int | None" = None,
                 expected: "str | None" = None):
        self.position = position
        self.expected = expected
        super().__init__(message)
