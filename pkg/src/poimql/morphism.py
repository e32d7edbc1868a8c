"""Morphisms of graphs fixing a set of attributes, and isomorphism search."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .errors import NotHomomorphism, NotTotal, ViolatesFixing
from .graph import FixedSet, FreshSupply, Graph, Term, Triple, I


@dataclass(frozen=True, eq=False)
class Morphism:
    """A map on attributes of ``domain`` sending every triple into ``codomain``.

    Instances built directly are trusted; use :func:`check_morphism` to
    validate an arbitrary map.
    """

    domain: Graph
    codomain: Graph
    mapping: Mapping[Term, Term]
    fixed: FixedSet

    def __post_init__(self):
        object.__setattr__(self, "mapping", MappingProxyType(dict(self.mapping)))

    def __call__(self, x: Term) -> Term:
        return self.mapping[x]

    def apply(self, t: Triple) -> Triple:
        m = self.mapping
        return Triple(m[t[0]], m[t[1]], m[t[2]])

    def image(self) -> Graph:
        return Graph(self.apply(t) for t in self.domain)

    def restrict(self, sub: Graph, codomain: Graph | None = None) -> Morphism:
        keep = sub.attributes()
        return Morphism(
            sub,
            self.codomain if codomain is None else codomain,
            {x: y for x, y in self.mapping.items() if x in keep},
            self.fixed,
        )

    def then(self, other: Morphism) -> Morphism:
        """``other ∘ self``."""
        return Morphism(
            self.domain,
            other.codomain,
            {x: other.mapping[y] for x, y in self.mapping.items()},
            self.fixed,
        )

    def moved(self) -> dict[Term, Term]:
        """The part of the map outside the fixed set."""
        return {x: y for x, y in self.mapping.items() if x not in self.fixed}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and dict(self.mapping) == dict(other.mapping)
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, frozenset(self.mapping.items())))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{x}->{y}" for x, y in sorted(self.mapping.items()))
        return f"Morphism[{self.fixed}]({pairs})"


def identity(g: Graph, fixed: FixedSet = I) -> Morphism:
    return Morphism(g, g, {x: x for x in g.attributes()}, fixed)


def inclusion(sub: Graph, sup: Graph, fixed: FixedSet = I) -> Morphism:
    return Morphism(sub, sup, {x: x for x in sub.attributes()}, fixed)


def check_morphism(mapping: Mapping[Term, Term], domain: Graph, codomain: Graph,
                   fixed: FixedSet) -> Morphism:
    attrs = domain.attributes()
    missing = sorted(attrs - mapping.keys())
    if missing:
        raise NotTotal(f"map is undefined on {', '.join(map(str, missing))}")
    for x in sorted(attrs):
        if x in fixed and mapping[x] != x:
            raise ViolatesFixing(f"{x} is fixed by {fixed} but mapped to {mapping[x]}")
    m = Morphism(domain, codomain, {x: mapping[x] for x in attrs}, fixed)
    for t in domain:
        image = m.apply(t)
        if image not in codomain:
            raise NotHomomorphism(f"image of ({t}) is ({image}), not in the codomain")
    return m


def _refine_colors(g1: Graph, g2: Graph, fixed: FixedSet):
    """Colour refinement run jointly on both graphs.

    Fixed attributes start with their own colour, non-fixed ones share a
    single colour; each round a colour is split by the multiset of
    (position, colours of the triple) over incident triples. Only the
    fixed/non-fixed split is seeded, because an isomorphism fixing ``I``
    may send a blank to a variable.
    """
    graphs = (g1, g2)
    incident = []
    for g in graphs:
        inc = defaultdict(list)
        for t in g.triples:
            for pos, x in enumerate(t):
                inc[x].append((pos, t))
        incident.append(inc)

    colors = [
        {x: (("F", x) if x in fixed else ("N",)) for x in g.attributes()} for g in graphs
    ]
    n_classes = len(set(colors[0].values()) | set(colors[1].values()))
    while True:
        table: dict = {}
        new = []
        for side in (0, 1):
            c = colors[side]
            nc = {}
            for x, occ in incident[side].items():
                sig = (c[x], tuple(sorted(
                    (pos, c[t[0]], c[t[1]], c[t[2]]) for pos, t in occ)))
                nc[x] = table.setdefault(sig, len(table))
            new.append(nc)
        count = len(table)
        colors = new
        if count == n_classes:
            return colors
        n_classes = count


def find_isomorphism(g1: Graph, g2: Graph, fixed: FixedSet) -> Morphism | None:
    """A bijective morphism ``g1 -> g2`` fixing ``fixed`` with image ``g2``, or None."""
    if len(g1) != len(g2):
        return None
    a1, a2 = g1.attributes(), g2.attributes()
    f1 = {x for x in a1 if x in fixed}
    f2 = {x for x in a2 if x in fixed}
    if f1 != f2 or len(a1) != len(a2):
        return None
    free1 = sorted(a1 - f1)
    free2 = sorted(a2 - f2)

    c1, c2 = _refine_colors(g1, g2, fixed)
    if Counter(c1.values()) != Counter(c2.values()):
        return None
    by_color = defaultdict(list)
    for y in free2:
        by_color[c2[y]].append(y)
    class_size = {k: len(v) for k, v in by_color.items()}

    incident = defaultdict(list)
    for t in g1:
        for x in set(t):
            if x not in fixed:
                incident[x].append(t)

    order = _search_order(free1, incident, lambda x: class_size[c1[x]])
    mapping: dict[Term, Term] = {x: x for x in f1}
    used: set[Term] = set()
    target = g2.triples

    def consistent(x: Term) -> bool:
        for t in incident[x]:
            if t[0] in mapping and t[1] in mapping and t[2] in mapping:
                if Triple(mapping[t[0]], mapping[t[1]], mapping[t[2]]) not in target:
                    return False
        return True

    # iterative backtracking; depth can reach the number of blanks
    n = len(order)
    candidates = [by_color[c1[x]] for x in order]
    cursor = [0] * (n + 1)
    i = 0
    while 0 <= i < n:
        x = order[i]
        if x in mapping:
            used.discard(mapping.pop(x))
        options = candidates[i]
        j = cursor[i]
        placed = False
        while j < len(options):
            y = options[j]
            j += 1
            if y in used:
                continue
            mapping[x] = y
            used.add(y)
            if consistent(x):
                placed = True
                break
            del mapping[x]
            used.discard(y)
        if placed:
            cursor[i] = j
            i += 1
            cursor[i] = 0
        else:
            cursor[i] = 0
            i -= 1
    if i < 0:
        return None
    # equal sizes and an injective attribute map make the triple map onto
    return Morphism(g1, g2, mapping, fixed)


def _search_order(free: list, incident, class_size) -> list:
    """Smallest colour class first, then stay connected to what is already placed."""
    neighbours = defaultdict(set)
    for x in free:
        for t in incident[x]:
            neighbours[x].update(y for y in t if y in incident and y != x)
    remaining = set(free)
    frontier: set = set()
    order = []
    while remaining:
        pool = frontier or remaining
        x = min(pool, key=lambda v: (class_size(v), v))
        order.append(x)
        remaining.discard(x)
        frontier.discard(x)
        frontier |= neighbours[x] & remaining
    return order


def rename_blanks(g: Graph, supply: FreshSupply) -> tuple[Graph, dict[Term, Term]]:
    """Replace every blank of ``g`` by a fresh one; variables are left alone."""
    renaming = {b: supply.blank() for b in sorted(g.blanks())}
    return g.rename(renaming), renaming
