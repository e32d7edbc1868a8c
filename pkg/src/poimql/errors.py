"""Exception hierarchy.

Parse errors carry a :class:`SourceSpan`; everything else is a plain
semantic error. The CLI maps the two families to different exit codes.
"""

from __future__ import annotations

from dataclasses import dataclass


class PoimError(Exception):
    """Base class for every error raised by this package."""


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    offset: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(PoimError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


class QuerySyntaxError(ParseError):
    def __init__(self, span: SourceSpan, expected: str, found: str = ""):
        msg = f"expected {expected}" + (f", found {found!r}" if found else "")
        super().__init__(msg, span)
        self.expected = expected


class VariableInData(ParseError):
    pass


class ReservedBlankPrefix(ParseError):
    pass


class DuplicateProjectionVar(ParseError):
    pass


class ProjectionNotInPattern(ParseError):
    def __init__(self, var, span: SourceSpan):
        super().__init__(f"projected variable {var} does not occur in the pattern", span)
        self.var = var


class MorphismError(PoimError):
    pass


class NotTotal(MorphismError):
    pass


class NotHomomorphism(MorphismError):
    pass


class ViolatesFixing(MorphismError):
    pass


class HasVariables(PoimError):
    pass


class CodomainHasVariables(PoimError):
    pass


class InvalidInclusion(PoimError):
    pass


class UnboundVariables(PoimError):
    def __init__(self, variables):
        self.variables = list(variables)
        names = ", ".join(str(v) for v in self.variables)
        super().__init__(f"template variables not bound by the pattern: {names}")


class EmptyProjection(PoimError):
    pass


class NotRelational(PoimError):
    pass


class BlanksInL(PoimError):
    pass


class TooLarge(PoimError):
    pass
