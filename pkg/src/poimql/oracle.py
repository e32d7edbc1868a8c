"""Direct evaluators written straight from the query-answer definitions.

Nothing here touches the matcher or the colimit code: solutions are
enumerated breadth-first pattern by pattern, templates are instantiated
by substitution, and results are plain set unions. The test-suite runs
these against the POIM engine.
"""

from __future__ import annotations

import itertools
from collections import Counter

from .errors import BlanksInL, TooLarge, UnboundVariables
from .graph import Graph, Kind, Term, Triple, is_rdf_triple
from .select import Multirelation

BRUTE_FORCE_LIMIT = 8


def _binds(x: Term) -> bool:
    return x.kind in (Kind.BLANK, Kind.VARIABLE)


def solution_mappings(l: Graph, g: Graph) -> list[dict[Term, Term]]:
    """Every assignment of the blanks and variables of ``l`` sending ``l`` into ``g``.

    Blanks of ``l`` are treated as variables. Evaluated as a left-deep
    sequence of joins in the order the patterns are listed.
    """
    solutions: list[dict[Term, Term]] = [{}]
    data = list(g.triples)
    for pattern in sorted(l.triples, key=str):
        extended = []
        for mu in solutions:
            for t in data:
                nu = dict(mu)
                for x, y in zip(pattern, t):
                    if not _binds(x):
                        if x != y:
                            break
                    elif nu.setdefault(x, y) != y:
                        break
                else:
                    extended.append(nu)
        solutions = extended
        if not solutions:
            break
    return solutions


class _OracleBlanks:
    """Fresh blanks labelled ``o<n>``, skipping labels already taken."""

    def __init__(self, taken):
        self.taken = {b.label for b in taken}
        self.counter = itertools.count(1)

    def __call__(self) -> Term:
        while True:
            label = f"o{next(self.counter)}"
            if label not in self.taken:
                self.taken.add(label)
                return Term(Kind.BLANK, label)


def _check_query(l: Graph, r: Graph) -> None:
    unbound = sorted(r.variables() - l.variables())
    if unbound:
        raise UnboundVariables(unbound)


def _instantiate(r: Graph, mu: dict, fresh: _OracleBlanks) -> list[Triple]:
    blanks = {b: fresh() for b in sorted(r.blanks())}

    def sub(x: Term) -> Term:
        if x.kind == Kind.VARIABLE:
            return mu[x]
        if x.kind == Kind.BLANK:
            return blanks[x]
        return x

    return [Triple(sub(s), sub(p), sub(o)) for s, p, o in r.triples]


def direct_construct(l: Graph, r: Graph, g: Graph, rdf_strict: bool = False) -> Graph:
    """Union over all matches of R with variables substituted and blanks renewed."""
    _check_query(l, r)
    fresh = _OracleBlanks(g.blanks() | l.blanks() | r.blanks())
    out: set[Triple] = set()
    for mu in solution_mappings(l, g):
        out.update(_instantiate(r, mu, fresh))
    if rdf_strict:
        out = {t for t in out if is_rdf_triple(t)}
    return Graph(out)


def sparql_construct_answer(l: Graph, r: Graph, g: Graph, rdf_strict: bool = False) -> Graph:
    """The SPARQL-style answer; the pattern may not contain blanks."""
    if l.blanks():
        raise BlanksInL("the pattern of a SPARQL CONSTRUCT answer must be blank-free")
    _check_query(l, r)
    fresh = _OracleBlanks(g.blanks() | r.blanks())
    out: set[Triple] = set()
    for mu in solution_mappings(l, g):
        # pairwise distinct blank relabelling per mapping, away from the data blanks
        out.update(_instantiate(r, mu, fresh))
    if rdf_strict:
        out = {t for t in out if is_rdf_triple(t)}
    return Graph(out)


def sparql_select_answer(l: Graph, projection, g: Graph) -> Multirelation:
    """Multiset of the solution mappings restricted to the projected variables."""
    projection = tuple(projection)
    missing = [v for v in projection if v not in l.variables()]
    if missing:
        raise ValueError(f"projected variables not in pattern: {missing}")
    counts = Counter(tuple(mu[v] for v in projection) for mu in solution_mappings(l, g))
    rows = [row for row, n in counts.items() for _ in range(n)]
    return Multirelation(tuple(v.label for v in projection), rows)


def brute_force_matches(l: Graph, g: Graph) -> set[frozenset]:
    """All maps from the blanks and variables of ``l`` into ``g`` that are matches.

    Each match is returned as a frozenset of (attribute, image) pairs for
    the non-fixed attributes only.
    """
    free = sorted(x for x in l.attributes() if _binds(x))
    if len(free) > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{len(free)} free attributes exceed the limit of {BRUTE_FORCE_LIMIT}")
    targets = sorted(x for x in g.attributes() if x.kind != Kind.VARIABLE)
    data = g.triples
    # a triple is checked as soon as its last free attribute is assigned
    position = {x: i for i, x in enumerate(free)}
    due: list[list[Triple]] = [[] for _ in free]
    for t in l.triples:
        last = max((position[x] for x in t if _binds(x)), default=None)
        if last is None:
            if t not in data:
                return set()
        else:
            due[last].append(t)
    found = set()
    m: dict[Term, Term] = {}

    def assign(i: int) -> None:
        if i == len(free):
            found.add(frozenset(m.items()))
            return
        for y in targets:
            m[free[i]] = y
            if all(Triple(*(m.get(x, x) for x in t)) in data for t in due[i]):
                assign(i + 1)
        m.pop(free[i], None)

    if not free:
        return {frozenset()}
    assign(0)
    return found
