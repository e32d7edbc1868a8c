"""Enumeration of matches of a query graph into a data graph.

A match fixes every IRI and literal and binds every variable and blank
of the pattern to an attribute of the data graph.
"""

from __future__ import annotations

from .errors import CodomainHasVariables
from .graph import Graph, I, Triple
from .morphism import Morphism

Match = Morphism


def _compatible(pattern: Triple, t: Triple) -> bool:
    return all(not x.is_resource or x == y for x, y in zip(pattern, t))


def enumerate_matches(l: Graph, g: Graph) -> list[Match]:
    """All matches ``l -> g``, each once, in a deterministic order.

    Backtracking join: patterns are visited cheapest first (fewest
    candidate triples, ties by canonical order), candidates in canonical
    triple order.
    """
    if g.variables():
        raise CodomainHasVariables("the data graph contains variables")
    patterns = list(l)
    candidates = {p: [t for t in g if _compatible(p, t)] for p in patterns}
    order = sorted(patterns, key=lambda p: (len(candidates[p]), p))
    if any(not candidates[p] for p in order):
        return []

    fixed_part = {x: x for x in l.attributes() if x.is_resource}
    binding: dict = {}
    found: list[Match] = []

    def extend(i: int) -> None:
        if i == len(order):
            found.append(Morphism(l, g, {**fixed_part, **binding}, I))
            return
        p = order[i]
        for t in candidates[p]:
            added = []
            ok = True
            for x, y in zip(p, t):
                if x.is_resource:
                    continue
                bound = binding.get(x)
                if bound is None:
                    binding[x] = y
                    added.append(x)
                elif bound != y:
                    ok = False
                    break
            if ok:
                extend(i + 1)
            for x in added:
                del binding[x]

    extend(0)
    return found


def match_image(m: Match) -> Graph:
    return m.image()
