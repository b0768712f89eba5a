"""Exception types shared across the package."""


class QwError(Exception):
    """Base class for all workbench errors."""


class InvalidInputError(QwError):
    """An argument violates a structural precondition (shape, range, arity)."""


class CapabilityError(QwError):
    """The requested scan exceeds the configured enumeration limit."""


class DomainError(QwError):
    """The value is well-formed but outside the operation's domain
    (e.g. a quantifier that is not downward closed, a non-minimal combo)."""


class ParseError(InvalidInputError):
    """Syntax error in the formula DSL, with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (at {line}:{column})")
        self.line = line
        self.column = column


class MalformedFileError(QwError):
    """An input file does not conform to its documented JSON schema."""
