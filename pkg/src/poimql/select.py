"""SELECT queries run as CONSTRUCT queries over a relational template.

``SELECT ?a ?b WHERE {L}`` is evaluated as ``CONSTRUCT {_:r a ?a . _:r b ?b}
WHERE {L}``; every match yields one row blank, and the resulting
relational data graph is read back as a multirelation.
"""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyProjection, NotRelational
from .graph import FreshSupply, Graph, I, Kind, Term, Triple, iri
from .morphism import find_isomorphism
from .poim import construct_eval, make_rule

COLUMN_NAMESPACE = "urn:x-poimql:column:"


def column_iri(name: str) -> Term:
    return iri(COLUMN_NAMESPACE + name)


def _column_term(c) -> Term:
    return c if isinstance(c, Term) else column_iri(c)


@dataclass(frozen=True)
class SelectQuery:
    pattern: Graph
    projection: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "projection", tuple(self.projection))
        if len(set(self.projection)) != len(self.projection):
            raise ValueError("projection variables must be distinct")
        missing = [v for v in self.projection if v not in self.pattern.variables()]
        if missing:
            raise ValueError(f"projected variables not in pattern: {missing}")

    @property
    def header(self) -> tuple[str, ...]:
        return tuple(v.label for v in self.projection)


@dataclass(frozen=True)
class Multirelation:
    """A table whose rows form a multiset; rows are kept sorted."""

    header: tuple[str, ...]
    rows: tuple[tuple[Term, ...], ...]

    def __post_init__(self):
        header = tuple(self.header)
        rows = tuple(sorted(tuple(r) for r in self.rows))
        for r in rows:
            if len(r) != len(header):
                raise ValueError(f"row {r} does not have arity {len(header)}")
        object.__setattr__(self, "header", header)
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return len(self.rows)

    def to_graph(self, row_prefix: str = "row") -> Graph:
        """Encode as a relational data graph, one blank per row."""
        triples = []
        for i, row in enumerate(self.rows, 1):
            subject = Term(Kind.BLANK, f"{row_prefix}{i}")
            triples.extend(Triple(subject, column_iri(c), y) for c, y in zip(self.header, row))
        return Graph(triples)

    def same_up_to_blanks(self, other: Multirelation) -> bool:
        """Multiset equality after some renaming of blanks applied to all rows."""
        if self.header != other.header or len(self) != len(other):
            return False
        if self.rows == other.rows:
            return True
        return find_isomorphism(self.to_graph("l"), other.to_graph("r"), I) is not None

    def canonical_blanks(self) -> Multirelation:
        """Blank cells relabelled ``_:b1, _:b2, ...`` in first-occurrence order."""
        names: dict[Term, Term] = {}
        rows = []
        for row in sorted(self.rows, key=lambda r: tuple(_blank_agnostic(x) for x in r)):
            new = []
            for x in row:
                if x.is_blank:
                    x = names.setdefault(x, Term(Kind.BLANK, f"b{len(names) + 1}"))
                new.append(x)
            rows.append(tuple(new))
        return Multirelation(self.header, rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([csv_cell(x) for x in row])
        return buf.getvalue()

    def to_text(self) -> str:
        cells = [list(self.header)] + [[str(x) for x in row] for row in self.rows]
        widths = [max(len(r[j]) for r in cells) for j in range(len(self.header))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"


def _blank_agnostic(x: Term):
    return (x.kind, "") if x.is_blank else x


def csv_cell(x: Term) -> str:
    """Literals as their value, IRIs without angle brackets, blanks as ``_:label``."""
    if x.kind == Kind.LITERAL or x.kind == Kind.IRI:
        return x.label
    return str(x)


def gr(projection: Sequence[Term], supply: FreshSupply) -> Graph:
    """The relational template: one row blank, one column triple per variable."""
    if not projection:
        raise EmptyProjection("a SELECT query needs at least one projected variable")
    if len(set(projection)) != len(projection):
        raise ValueError("projection variables must be distinct")
    row = supply.blank()
    return Graph(Triple(row, column_iri(v.label), v) for v in projection)


def _row_groups(h: Graph):
    groups = defaultdict(dict)
    for s, p, o in h:
        if not s.is_blank or p in groups[s]:
            return None
        groups[s][p] = o
    return groups


def is_relational_data_graph(h: Graph, header: Sequence) -> bool:
    columns = [_column_term(c) for c in header]
    groups = _row_groups(h)
    if groups is None:
        return False
    want = set(columns)
    return all(set(cells) == want for cells in groups.values())


def rel(h: Graph, header: Sequence) -> Multirelation:
    if not is_relational_data_graph(h, header):
        raise NotRelational("graph is not a relational data graph on the given header")
    columns = [_column_term(c) for c in header]
    names = [c if isinstance(c, str) else c.label for c in header]
    rows = [tuple(cells[c] for c in columns) for cells in _row_groups(h).values()]
    return Multirelation(tuple(names), rows)


def select_eval(q: SelectQuery, g: Graph, supply: FreshSupply,
                calculus: str = "low") -> Multirelation:
    rule = make_rule(q.pattern, gr(q.projection, supply), supply)
    h = construct_eval(rule, g, supply, calculus)
    return rel(h, q.header)
