"""Coproducts, pushouts along inclusions and image factorization of graphs."""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import InvalidInclusion
from .graph import FixedSet, FreshSupply, Graph, Term, union
from .morphism import Morphism, inclusion


class PushoutResult(NamedTuple):
    d: Graph
    n: Morphism  # K -> D
    g: Morphism  # G -> D, an inclusion


class ImageResult(NamedTuple):
    h: Graph
    p: Morphism  # R -> H
    inclusion: Morphism  # H -> D


def _freshen(attrs, fixed: FixedSet, supply: FreshSupply, avoid=frozenset()) -> dict[Term, Term]:
    return {x: supply.like(x, avoid) for x in sorted(attrs) if x not in fixed}


def coproduct(parts: Sequence[Graph], fixed: FixedSet,
              supply: FreshSupply) -> tuple[Graph, list[Morphism]]:
    """Disjoint union of ``parts`` up to isomorphism fixing ``fixed``.

    Every non-fixed attribute of every part is renamed freshly, so two
    parts only share fixed attributes; the union is then the coproduct.
    """
    injections = []
    renamed = []
    for part in parts:
        attrs = part.attributes()
        renaming = _freshen(attrs, fixed, supply)
        renamed.append(part.rename(renaming))
        injections.append({x: renaming.get(x, x) for x in attrs})
    total = union(renamed)
    return total, [Morphism(p, total, m, fixed) for p, m in zip(parts, injections)]


def pushout(l: tuple[Graph, Graph], m: Morphism, fixed: FixedSet,
            supply: FreshSupply) -> PushoutResult:
    """Pushout of the inclusion ``L ⊆ K`` along ``m: L -> G``.

    Non-fixed attributes of K that are not attributes of L are given fresh
    names first, which puts K and G in the position where
    ``D = G ∪ N(K)`` is the pushout. Only the rule side is renamed; the
    returned ``n`` is defined on the original K.
    """
    small, big = l
    if not small <= big:
        raise InvalidInclusion("left-hand side is not contained in K")
    target = m.codomain
    l_attrs = small.attributes()
    outside = big.attributes() - l_attrs
    n_map = {x: m.mapping[x] for x in l_attrs}
    n_map.update(_freshen(outside, fixed, supply, avoid=target.attributes()))
    for x in outside:
        n_map.setdefault(x, x)
    instantiated = big.rename(n_map)
    d = target | instantiated
    return PushoutResult(d, Morphism(big, d, n_map, fixed), inclusion(target, d, fixed))


def image_factorization(r: tuple[Graph, Graph], n: Morphism) -> ImageResult:
    """Factor ``n`` restricted to ``R ⊆ K`` through its image ``H = n(R)``."""
    small, big = r
    if not small <= big:
        raise InvalidInclusion("right-hand side is not contained in K")
    h = Graph(n.apply(t) for t in small)
    p = n.restrict(small, codomain=h)
    return ImageResult(h, p, inclusion(h, n.codomain, n.fixed))
