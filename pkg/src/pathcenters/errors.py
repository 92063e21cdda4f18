"""Shared exception types."""


class ParseError(ValueError):
    """Malformed textual input; carries the character position when known."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class OrderMismatchError(ValueError):
    """Two truncated series with different truncation orders were combined."""
