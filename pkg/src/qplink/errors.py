class QplinkError(Exception):
    """Base class for errors raised on bad input."""


class DomainError(QplinkError, ValueError):
    """Input parses but lies outside an operation's domain."""


class ParseError(QplinkError, ValueError):
    """Input text or JSON could not be parsed."""
