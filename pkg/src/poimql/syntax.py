"""Reading and writing the small triple syntax.

Data graphs (``.dg``)::

    @prefix : <http://example.org/> .     # optional
    :alice :name "Alice" . _:b :knows :bob

Queries (``.rq``)::

    CONSTRUCT { ?x :FN ?name } WHERE { ?x :name ?name }
    SELECT ?nameX ?nameY WHERE { ?x :knows ?y . ?x :name ?nameX . ?y :name ?nameY }

Without a prefix declaration ``:alice`` stays the IRI ``:alice``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import (
    DuplicateProjectionVar,
    ProjectionNotInPattern,
    QuerySyntaxError,
    ReservedBlankPrefix,
    SourceSpan,
    VariableInData,
)
from .graph import FreshSupply, Graph, Kind, Term, Triple
from .select import SelectQuery

_NAME = r"[^\W][\w\-]*"

_TOKEN = re.compile(
    rf"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<iri><[^<>"{{}}\s]*>)
  | (?P<pname>:{_NAME}|:(?![\w]))
  | (?P<literal>"(?:[^"\\\n]|\\.)*")
  | (?P<blank>_:{_NAME})
  | (?P<var>\?{_NAME})
  | (?P<prefix>@prefix\b)
  | (?P<keyword>[A-Za-z]+\b)
  | (?P<punct>[.{{}}])
""",
    re.VERBOSE,
)

_LITERAL_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


@dataclass(frozen=True)
class ConstructQuery:
    template: Graph
    pattern: Graph


Query = Union[ConstructQuery, SelectQuery]


def _span(text: str, offset: int) -> SourceSpan:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return SourceSpan(line, column, offset)


def tokenize(text: str) -> Iterator[Token]:
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise QuerySyntaxError(_span(text, pos), "a term, '.', '{' or '}'", text[pos:pos + 12])
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            yield Token(kind, m.group(), _span(text, pos))
        pos = m.end()
    yield Token("eof", "", _span(text, len(text)))


def _unescape(body: str, span: SourceSpan) -> str:
    out = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "\\":
            nxt = body[i + 1]
            if nxt not in _LITERAL_ESCAPES:
                raise QuerySyntaxError(span, 'one of the escapes \\" \\\\ \\n \\t', "\\" + nxt)
            out.append(_LITERAL_ESCAPES[nxt])
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


class _Parser:
    def __init__(self, text: str, allow_variables: bool):
        self.text = text
        self.tokens = list(tokenize(text))
        self.i = 0
        self.allow_variables = allow_variables
        self.base: str | None = None

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        tok = self.peek
        if tok.kind != kind or (text is not None and tok.text.upper() != text):
            raise QuerySyntaxError(tok.span, what or text or kind, tok.text or "end of input")
        return self.next()

    def at_keyword(self, word: str) -> bool:
        return self.peek.kind == "keyword" and self.peek.text.upper() == word

    def prefixes(self) -> None:
        while self.peek.kind == "prefix":
            self.next()
            self.expect("pname", what="':'")
            base = self.expect("iri", what="an IRI in angle brackets")
            self.base = base.text[1:-1]
            if self.peek.kind == "punct" and self.peek.text == ".":
                self.next()

    def term(self) -> Term:
        tok = self.peek
        if tok.kind == "iri":
            self.next()
            return Term(Kind.IRI, tok.text[1:-1])
        if tok.kind == "pname":
            self.next()
            if self.base is not None:
                return Term(Kind.IRI, self.base + tok.text[1:])
            return Term(Kind.IRI, tok.text)
        if tok.kind == "literal":
            self.next()
            return Term(Kind.LITERAL, _unescape(tok.text[1:-1], tok.span))
        if tok.kind == "blank":
            self.next()
            label = tok.text[2:]
            if label.startswith(FreshSupply.PREFIX):
                raise ReservedBlankPrefix(
                    f"blank labels starting with {FreshSupply.PREFIX!r} are reserved", tok.span)
            return Term(Kind.BLANK, label)
        if tok.kind == "var":
            if not self.allow_variables:
                raise VariableInData(f"variable {tok.text} in a data graph", tok.span)
            self.next()
            return Term(Kind.VARIABLE, tok.text[1:])
        raise QuerySyntaxError(tok.span, "a term", tok.text or "end of input")

    def triples(self, closing: str | None) -> Graph:
        """``triple ('.' triple)* '.'?`` up to ``closing`` (or end of input)."""
        out = []

        def at_end() -> bool:
            tok = self.peek
            if closing is None:
                return tok.kind == "eof"
            return tok.kind == "punct" and tok.text == closing

        while not at_end():
            out.append(Triple(self.term(), self.term(), self.term()))
            if at_end():
                break
            self.expect("punct", ".", what="'.'" + (f" or '{closing}'" if closing else ""))
        return Graph(out)

    def group(self) -> Graph:
        self.expect("punct", "{", what="'{'")
        g = self.triples("}")
        self.expect("punct", "}", what="'}'")
        return g


def parse_data(text: str) -> Graph:
    p = _Parser(text, allow_variables=False)
    p.prefixes()
    return p.triples(None)


def parse_pattern(text: str) -> Graph:
    """A graph in data syntax where variables are also allowed."""
    p = _Parser(text, allow_variables=True)
    p.prefixes()
    return p.triples(None)


def parse_query(text: str) -> Query:
    p = _Parser(text, allow_variables=True)
    p.prefixes()
    if p.at_keyword("CONSTRUCT"):
        p.next()
        template = p.group()
        p.expect("keyword", "WHERE")
        pattern = p.group()
        p.expect("eof", what="end of input")
        return ConstructQuery(template, pattern)
    if p.at_keyword("SELECT"):
        p.next()
        projection = []
        spans = []
        while p.peek.kind == "var":
            tok = p.next()
            v = Term(Kind.VARIABLE, tok.text[1:])
            if v in projection:
                raise DuplicateProjectionVar(f"{tok.text} is projected twice", tok.span)
            projection.append(v)
            spans.append(tok.span)
        if not projection:
            raise QuerySyntaxError(p.peek.span, "a projected variable", p.peek.text or "end of input")
        p.expect("keyword", "WHERE")
        pattern = p.group()
        p.expect("eof", what="end of input")
        present = pattern.variables()
        for v, span in zip(projection, spans):
            if v not in present:
                raise ProjectionNotInPattern(v, span)
        return SelectQuery(pattern, tuple(projection))
    raise QuerySyntaxError(p.peek.span, "CONSTRUCT or SELECT", p.peek.text or "end of input")


def _blank_agnostic_key(t: Triple):
    return tuple((x.kind, "") if x.is_blank else x for x in t), t


def canonical_relabel(g: Graph) -> Graph:
    """Rename blanks to ``b1, b2, ...`` by first occurrence in a label-blind order."""
    names: dict[Term, Term] = {}
    for t in sorted(g.triples, key=_blank_agnostic_key):
        for x in t:
            if x.is_blank and x not in names:
                names[x] = Term(Kind.BLANK, f"b{len(names) + 1}")
    return g.rename(names)


def serialize_graph(g: Graph, canonical_blanks: bool = False) -> str:
    """One triple per line in canonical order, separated by `` .``."""
    if canonical_blanks:
        g = canonical_relabel(g)
    return " .\n".join(str(t) for t in g)
