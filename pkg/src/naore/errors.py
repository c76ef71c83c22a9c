"""Shared exception types."""


class NaoreError(Exception):
    """Base class for every error raised by this package."""


class MismatchError(NaoreError):
    """Operands live in different fields, rings, or Ore ring handles."""


class CapsRequiredError(NaoreError):
    """An operation quantifying over an infinite basis was called without caps."""


class UnsupportedMapError(NaoreError):
    """An additive map was paired with a ring constructor it is not defined on."""


class AnalysisExclusionError(NaoreError):
    """Structure analysis was requested for a ring it is deliberately excluded on."""


class SpecFileError(NaoreError):
    """A ring-spec file failed to parse or validate.  Carries (line, column)."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class TextFormError(NaoreError):
    """Canonical polynomial text failed to parse.  Carries a character offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"offset {offset}: {message}")
        self.message = message
        self.offset = offset
