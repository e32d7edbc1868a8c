"""CONSTRUCT evaluation by pushout followed by image factorization.

A query ``CONSTRUCT {R} WHERE {L}`` becomes the rule ``L ⊆ K ⊇ R`` with
``K = L ∪ R``. One rewrite step takes a match ``m: L -> G``, pushes it out
along ``L ⊆ K`` (instantiating variables, minting blanks) and keeps only
the image of R. Two calculi run a whole query: ``high`` does a single
step with the k-fold copy of the rule, ``low`` does one step per match
and glues the local results with a coproduct that keeps data blanks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

from .colimit import coproduct, image_factorization, pushout
from .errors import UnboundVariables
from .graph import FixedSet, FreshSupply, Graph, I, Term, is_rdf_triple
from .matcher import Match, enumerate_matches
from .morphism import Morphism

log = logging.getLogger(__name__)

CALCULI = ("high", "low")


@dataclass(frozen=True)
class ConstructRule:
    l: Graph
    r: Graph
    k: Graph
    # per-copy attribute renamings, filled in by k_fold_rule
    copies: tuple = field(default=(), compare=False)


class PoimResult(NamedTuple):
    h: Graph
    p: Morphism  # R -> H
    d: Graph


def make_rule(l: Graph, r: Graph, supply: FreshSupply, strict: bool = True) -> ConstructRule:
    """Build the rule of the basic construct query ``(l, r)``.

    Blanks of ``r`` are always renamed freshly, which makes them disjoint
    from the blanks of ``l``. Template variables missing from ``l`` are an
    error in strict mode; otherwise the triples holding them are dropped.
    """
    unbound = sorted(r.variables() - l.variables())
    if unbound:
        if strict:
            raise UnboundVariables(unbound)
        bad = set(unbound)
        log.info("dropping template triples with unbound variables %s", unbound)
        r = Graph(t for t in r if not bad.intersection(t))
    r = r.rename({b: supply.blank() for b in sorted(r.blanks())})
    return ConstructRule(l, r, l | r)


def poim_apply(rule: ConstructRule, m: Match, supply: FreshSupply) -> PoimResult:
    po = pushout((rule.l, rule.k), m, I, supply)
    im = image_factorization((rule.r, rule.k), po.n)
    return PoimResult(im.h, im.p, po.d)


def k_fold_rule(rule: ConstructRule, k: int, supply: FreshSupply) -> ConstructRule:
    """The rule made of ``k`` copies of ``rule`` with no shared blank or variable.

    Each copy renames every blank and variable of K, so L and R are renamed
    consistently. The renamings are kept in ``copies``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    movable = sorted(x for x in rule.k.attributes() if not x.is_resource)
    ls, rs, copies = [], [], []
    for _ in range(k):
        renaming = {x: supply.like(x) for x in movable}
        ls.append(rule.l.rename(renaming))
        rs.append(rule.r.rename(renaming))
        copies.append(renaming)
    kl = Graph(t for g in ls for t in g.triples)
    kr = Graph(t for g in rs for t in g.triples)
    return ConstructRule(kl, kr, kl | kr, tuple(copies))


def construct_high(rule: ConstructRule, g: Graph, supply: FreshSupply) -> Graph:
    matches = enumerate_matches(rule.l, g)
    big = k_fold_rule(rule, len(matches), supply)
    combined: dict[Term, Term] = {x: x for x in big.l.attributes() if x.is_resource}
    for renaming, m in zip(big.copies, matches):
        for x, y in m.mapping.items():
            if not x.is_resource:
                combined[renaming[x]] = y
    m = Morphism(big.l, g, combined, I)
    return poim_apply(big, m, supply).h


def local_results(rule: ConstructRule, g: Graph, supply: FreshSupply) -> list[Graph]:
    """One POIM result per match, each computed against the match image only."""
    out = []
    for m in enumerate_matches(rule.l, g):
        image = m.image()
        out.append(poim_apply(rule, m.restrict(rule.l, codomain=image), supply).h)
    return out


def construct_low(rule: ConstructRule, g: Graph, supply: FreshSupply) -> Graph:
    merged, _ = coproduct(local_results(rule, g, supply), FixedSet.ib_of(g), supply)
    return merged


def rdf_triples_only(h: Graph) -> Graph:
    return Graph(t for t in h.triples if is_rdf_triple(t))


def construct_eval(rule: ConstructRule, g: Graph, supply: FreshSupply,
                   calculus: str = "low", rdf_strict: bool = False) -> Graph:
    if calculus == "high":
        h = construct_high(rule, g, supply)
    elif calculus == "low":
        h = construct_low(rule, g, supply)
    else:
        raise ValueError(f"unknown calculus {calculus!r}")
    return rdf_triples_only(h) if rdf_strict else h
