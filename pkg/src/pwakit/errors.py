"""Exception types shared across the package."""

from __future__ import annotations


class PwakitError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(PwakitError):
    """An RDF structural rule was violated (bad term, bad triple, frozen graph)."""


class CapacityError(PwakitError):
    """A documented size limit was exceeded (e.g. too many blank nodes)."""


class ParseError(PwakitError):
    """A text document failed to parse; carries the collected diagnostics."""

    def __init__(self, message: str, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = "; ".join(str(d) for d in self.diagnostics[:5])
        more = len(self.diagnostics) - 5
        if more > 0:
            details += f" (+{more} more)"
        return f"{base}: {details}"


class CsvError(PwakitError):
    """CSV input could not be loaded."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class UnknownColumnError(PwakitError):
    """A column name does not exist in a logical table."""

    def __init__(self, name: str, suggestion: str | None = None):
        msg = f"unknown column {name!r}"
        if suggestion:
            msg += f" (did you mean {suggestion!r}?)"
        super().__init__(msg)
        self.name = name
        self.suggestion = suggestion


class EmptyCellError(PwakitError):
    """An IRI template referenced an empty cell."""


class MappingError(PwakitError):
    """A mapping document is malformed or cannot be executed."""


class QueryError(PwakitError):
    """A query is syntactically or structurally invalid."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{line}:{column or 0}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class FilterTypeError(PwakitError):
    """A filter comparison was applied to non-numeric operands."""
