"""Exception hierarchy shared across the toolbox."""

from __future__ import annotations


class HfgtError(Exception):
    """Base class for all toolbox errors."""


class LfesParseError(HfgtError):
    """Malformed XML input; carries the position reported by the parser."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class LfesSchemaError(HfgtError):
    """Well-formed XML that violates the LFES grammar; carries the element path."""

    def __init__(self, message: str, path: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class EventListError(HfgtError):
    """Bad scheduled-event-list CSV; carries the offending data row when known."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class MetamodelError(HfgtError):
    """Indexing or process-set construction failed (dangling or duplicate names)."""


class ModelValueError(HfgtError):
    """A computation was asked for on a model that fails its preconditions."""


class PetriModelError(HfgtError):
    """The model lacks attributes required to build the replay Petri net."""


class InfeasibleEventError(HfgtError):
    """A scheduled event cannot be realized by the system or its marking."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(message)
