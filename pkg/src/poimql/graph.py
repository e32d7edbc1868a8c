"""Terms, triples and graphs of triples.

A graph is a finite set of triples over the alphabet of IRIs, literals,
blanks and variables. Graphs are immutable values; iteration always
follows the canonical (kind, label) order so that everything built on
top of them is deterministic.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, NamedTuple

from .errors import HasVariables


class Kind(IntEnum):
    IRI = 0
    LITERAL = 1
    BLANK = 2
    VARIABLE = 3


_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t"}


def escape_literal(text: str) -> str:
    return "".join(_ESCAPES.get(c, c) for c in text)


class Term(NamedTuple):
    kind: Kind
    label: str

    @property
    def is_resource(self) -> bool:
        """IRIs and literals together form the resource identifiers."""
        return self.kind <= Kind.LITERAL

    @property
    def is_blank(self) -> bool:
        return self.kind == Kind.BLANK

    @property
    def is_variable(self) -> bool:
        return self.kind == Kind.VARIABLE

    def __str__(self) -> str:
        if self.kind == Kind.IRI:
            return self.label if self.label.startswith(":") else f"<{self.label}>"
        if self.kind == Kind.LITERAL:
            return f'"{escape_literal(self.label)}"'
        if self.kind == Kind.BLANK:
            return f"_:{self.label}"
        return f"?{self.label}"

    def __repr__(self) -> str:
        return f"Term({self})"


def iri(label: str) -> Term:
    """``iri("alice")`` and ``iri(":alice")`` both give the abbreviated ``:alice``."""
    if not label:
        raise ValueError("empty IRI")
    if "://" not in label and not label.startswith(":") and ":" not in label:
        label = ":" + label
    return Term(Kind.IRI, label)


def lit(value: str) -> Term:
    return Term(Kind.LITERAL, value)


def blank(label: str) -> Term:
    if not label:
        raise ValueError("empty blank label")
    return Term(Kind.BLANK, label)


def var(label: str) -> Term:
    if not label:
        raise ValueError("empty variable label")
    return Term(Kind.VARIABLE, label)


class Triple(NamedTuple):
    subject: Term
    predicate: Term
    object: Term

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object}"


class Graph:
    """A finite set of triples."""

    __slots__ = ("_triples", "_order")

    def __init__(self, triples: Iterable[Iterable[Term]] = ()):
        self._triples = frozenset(Triple(*t) for t in triples)
        self._order: tuple[Triple, ...] | None = None

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    def __iter__(self) -> Iterator[Triple]:
        if self._order is None:
            self._order = tuple(sorted(self._triples))
        return iter(self._order)

    def __len__(self) -> int:
        return len(self._triples)

    def __bool__(self) -> bool:
        return bool(self._triples)

    def __contains__(self, t) -> bool:
        return t in self._triples

    def __eq__(self, other) -> bool:
        if isinstance(other, Graph):
            return self._triples == other._triples
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._triples)

    def __or__(self, other: Graph) -> Graph:
        return Graph(self._triples | other._triples)

    def __le__(self, other: Graph) -> bool:
        return self._triples <= other._triples

    def __sub__(self, other: Graph) -> Graph:
        return Graph(self._triples - other._triples)

    def __repr__(self) -> str:
        return "Graph{" + " . ".join(str(t) for t in self) + "}"

    def add(self, t: Iterable[Term]) -> Graph:
        return Graph(self._triples | {Triple(*t)})

    def attributes(self) -> frozenset[Term]:
        return frozenset(itertools.chain.from_iterable(self._triples))

    def blanks(self) -> frozenset[Term]:
        return frozenset(x for x in self.attributes() if x.kind == Kind.BLANK)

    def variables(self) -> frozenset[Term]:
        return frozenset(x for x in self.attributes() if x.kind == Kind.VARIABLE)

    def map(self, f) -> Graph:
        """Image of the graph under the attribute map ``f`` applied pointwise."""
        return Graph(Triple(f(s), f(p), f(o)) for s, p, o in self._triples)

    def rename(self, renaming: dict) -> Graph:
        return self.map(lambda x: renaming.get(x, x))


def union(graphs: Iterable[Graph]) -> Graph:
    out: set = set()
    for g in graphs:
        out |= g.triples
    return Graph(out)


def attributes(g: Graph) -> frozenset[Term]:
    return g.attributes()


def partition_attributes(g: Graph):
    """Split attributes into (resource identifiers, blanks, variables)."""
    resources, blanks, variables = set(), set(), set()
    for x in g.attributes():
        if x.is_resource:
            resources.add(x)
        elif x.is_blank:
            blanks.add(x)
        else:
            variables.add(x)
    return frozenset(resources), frozenset(blanks), frozenset(variables)


def is_rdf_triple(t: Triple) -> bool:
    s, p, o = t
    return (
        s.kind in (Kind.IRI, Kind.BLANK)
        and p.kind == Kind.IRI
        and o.kind in (Kind.IRI, Kind.LITERAL, Kind.BLANK)
    )


def is_rdf_graph(g: Graph) -> bool:
    if g.variables():
        raise HasVariables("an RDF graph cannot contain variables")
    return all(is_rdf_triple(t) for t in g.triples)


@dataclass(frozen=True)
class FixedSet:
    """A set of attributes that morphisms must leave in place.

    The set is infinite, so it is described by the term kinds it contains,
    plus an optional finite set of blank labels (``IB(G)``).
    """

    name: str
    kinds: frozenset
    blank_labels: frozenset | None = None

    def __contains__(self, x: Term) -> bool:
        if x.kind in self.kinds:
            return True
        return x.kind == Kind.BLANK and self.blank_labels is not None and x.label in self.blank_labels

    def __str__(self) -> str:
        return self.name

    @classmethod
    def ib_of(cls, g: Graph, name: str = "G") -> FixedSet:
        """Resource identifiers together with the blanks occurring in ``g``."""
        return cls(f"IB({name})", I.kinds, frozenset(b.label for b in g.blanks()))

    @classmethod
    def named(cls, name: str) -> FixedSet:
        try:
            return _NAMED[name.upper()]
        except KeyError:
            raise ValueError(f"unknown fixed set {name!r}; expected one of I, IV, IB, IBV") from None


I = FixedSet("I", frozenset({Kind.IRI, Kind.LITERAL}))
IV = FixedSet("IV", frozenset({Kind.IRI, Kind.LITERAL, Kind.VARIABLE}))
IB = FixedSet("IB", frozenset({Kind.IRI, Kind.LITERAL, Kind.BLANK}))
IBV = FixedSet("IBV", frozenset(Kind))
_NAMED = {"I": I, "IV": IV, "IB": IB, "IBV": IBV}


class FreshSupply:
    """Allocator of fresh blank and variable labels.

    Labels are ``fresh<n>``; the parser refuses user blanks with that
    prefix, so allocated blanks never clash with parsed ones. ``start``
    offsets the counter. Allocation is serialized by a lock.
    """

    PREFIX = "fresh"

    def __init__(self, start: int = 0):
        self._counter = itertools.count(start + 1)
        self._lock = threading.Lock()

    def _label(self) -> str:
        with self._lock:
            return f"{self.PREFIX}{next(self._counter)}"

    def blank(self, avoid=frozenset()) -> Term:
        while True:
            t = Term(Kind.BLANK, self._label())
            if t not in avoid:
                return t

    def variable(self) -> Term:
        return Term(Kind.VARIABLE, self._label())

    def like(self, x: Term, avoid=frozenset()) -> Term:
        """A fresh attribute of the same kind as ``x`` (blank or variable)."""
        if x.kind == Kind.VARIABLE:
            return self.variable()
        if x.kind == Kind.BLANK:
            return self.blank(avoid)
        raise ValueError(f"cannot freshen resource identifier {x}")
