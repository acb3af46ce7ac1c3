"""
Exception hierarchy for the quiver moduli toolkit.

Every error carries the process exit code the CLI should use for it.
Library code raises; only cli_io maps errors to exit codes.
"""

from typing import Optional, Tuple


class QuiverModuliError(Exception):
    """Base class for all toolkit errors."""
    exit_code = 1


# ============================================================================
# PARSE ERRORS
# ============================================================================

class ParseError(QuiverModuliError):
    """Base class for document errors."""
    exit_code = 2
    path: Optional[str] = None

    def at(self, path: str) -> 'ParseError':
        """Attach the JSON path of the offending value."""
        self.path = path
        self.args = (f"{self.args[0]} at {path}",) + self.args[1:]
        return self


class MalformedDocument(ParseError):
    """Document is not well-formed JSON or misses required fields."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownVertex(ParseError):
    """An arrow or vector refers to an undeclared vertex."""

    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"Unknown vertex '{vertex}'")


class UnknownArrow(ParseError):
    """A relation or module refers to an undeclared arrow."""

    def __init__(self, arrow: str):
        self.arrow = arrow
        super().__init__(f"Unknown arrow '{arrow}'")


class NonComposableRelation(ParseError):
    """A relation (first, second) with head(first) != tail(second)."""

    def __init__(self, first: str, second: str):
        self.pair = (first, second)
        super().__init__(f"Relation ({first}, {second}) is not a composable path")


class DuplicateId(ParseError):
    """A vertex or arrow id is declared twice."""

    def __init__(self, kind: str, identifier: str):
        self.kind = kind
        self.identifier = identifier
        super().__init__(f"Duplicate {kind} id '{identifier}'")


class DuplicateRelation(ParseError):
    """The same generator is listed twice."""

    def __init__(self, first: str, second: str):
        self.pair = (first, second)
        super().__init__(f"Duplicate relation ({first}, {second})")


class UnknownCatalogEntry(ParseError):
    """No bundled algebra with this name."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"No catalog entry named '{name}'")


# ============================================================================
# CLASS ERRORS
# ============================================================================

class ClassError(QuiverModuliError):
    """The algebra lies outside the class an operation supports."""
    exit_code = 3


class UnsupportedClass(ClassError):
    pass


class NotGentle(ClassError):
    pass


class NotString(ClassError):
    pass


class NoExactColoring(ClassError):
    """Raised with the same-color composable pair that is not a relation."""

    def __init__(self, blocking_pair: Tuple[str, str]):
        self.blocking_pair = blocking_pair
        super().__init__(
            f"No coloring with I_c = I: pair {blocking_pair} would be a spurious relation"
        )


class SearchExhausted(ClassError):
    pass


# ============================================================================
# COMPUTATION ERRORS
# ============================================================================

class OracleScaleExceeded(QuiverModuliError):
    """Exhaustive enumeration requested outside the oracle guard."""
    exit_code = 4


class FieldTooSmall(QuiverModuliError):
    pass


class Inconsistent(QuiverModuliError):
    """Monte Carlo trials disagree."""
    pass


class SplitFailure(QuiverModuliError):
    pass


class NonSplitSummand(SplitFailure):
    """An indecomposable summand whose endomorphism ring does not split over F_p."""
    pass


class NotCanonicalForm(QuiverModuliError):
    pass


class NotSemistable(QuiverModuliError):
    pass


class NotStable(QuiverModuliError):
    pass


class FieldMismatch(QuiverModuliError):
    pass


class NotASubmodule(QuiverModuliError):
    pass


class InvalidRankSequence(QuiverModuliError):
    pass


class InvalidModule(QuiverModuliError):
    pass
