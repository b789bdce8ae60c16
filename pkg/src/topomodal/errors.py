"""Exception hierarchy shared by every engine.

Each error carries a stable ``code`` used by the CLI and by JSON reports.
"""

from __future__ import annotations


class TopoModalError(Exception):
    code = "TopoModalError"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details

    def as_dict(self) -> dict:
        return {"error": self.code, "message": str(self), **self.details}


class InputError(TopoModalError):
    """Malformed input: unknown points, bad shapes, exceeded caps."""

    code = "InputError"


class TopologyError(TopoModalError):
    code = "TopologyError"


class MissingWhole(TopologyError):
    code = "MissingWhole"


class MissingEmpty(TopologyError):
    code = "MissingEmpty"


class NotClosedUnderUnion(TopologyError):
    code = "NotClosedUnderUnion"


class NotClosedUnderIntersection(TopologyError):
    code = "NotClosedUnderIntersection"


class DuplicateOpen(TopologyError):
    code = "DuplicateOpen"


class FormulaSyntaxError(TopoModalError):
    code = "SyntaxError"

    def __init__(self, line: int, column: int, expected, found: str):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        self.found = found
        super().__init__(
            f"line {line}, col {column}: expected one of {', '.join(self.expected)}; found {found}",
            line=line,
            column=column,
            expected=list(self.expected),
            found=found,
        )


class RegimeViolation(TopoModalError):
    code = "RegimeViolation"


class ConnectiveNotInRegime(TopoModalError):
    code = "ConnectiveNotInRegime"


class UnknownAtom(TopoModalError):
    code = "UnknownAtom"


class UnknownPoint(TopoModalError):
    code = "UnknownPoint"


class VocabularyMismatch(TopoModalError):
    code = "VocabularyMismatch"


class RegimeMismatch(TopoModalError):
    code = "RegimeMismatch"


class BadCorrespondence(TopoModalError):
    code = "BadCorrespondence"


class SourceTargetMismatch(TopoModalError):
    code = "SourceTargetMismatch"


class ChainNotFound(TopoModalError):
    """No fence exists; the reachable component of the map space was exhausted."""

    code = "NotFound"


class BudgetExceeded(TopoModalError):
    """Search stopped before deciding; existence of a fence is unknown."""

    code = "BudgetExceeded"


class RelationInvalid(TopoModalError):
    code = "RelationInvalid"
