"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI can map
failures onto diagnostics without string-matching messages.
"""

from __future__ import annotations


class SqcatError(Exception):
    """Base class for all package errors."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details


class IllFormedSquareError(SqcatError):
    code = "ill-formed-square"


class AmbientMismatchError(SqcatError):
    """Raised when an operation needs one ambient category but the two
    morphism categories disagree."""

    code = "ambient-mismatch"


class BoundExceededError(SqcatError):
    code = "bound-exceeded"


class CapExceededError(SqcatError):
    code = "cap-exceeded"


class DisconnectedError(SqcatError):
    code = "disconnected"


class NoncommutingGeneratorError(SqcatError):
    code = "noncommuting-generator"


class BasepointNotInitialError(SqcatError):
    code = "basepoint-not-initial"


class ParseError(SqcatError):
    """Syntax or reference error in a ``.sqcat`` document."""

    code = "parse-error"

    def __init__(self, message: str, *, line: int = 0, column: int = 0,
                 expected: tuple = (), code: str | None = None):
        super().__init__(message, line=line, column=column, expected=expected)
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        if code is not None:
            self.code = code

    def __str__(self):
        loc = f"line {self.line}, column {self.column}: " if self.line else ""
        hint = f" (expected {', '.join(self.expected)})" if self.expected else ""
        return f"{loc}{self.message}{hint}"
