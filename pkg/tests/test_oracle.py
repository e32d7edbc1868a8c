from collections import Counter

import pytest

from poimql.errors import BlanksInL, TooLarge, UnboundVariables
from poimql.graph import Graph, I, blank, iri, lit, var
from poimql.morphism import find_isomorphism
from poimql.oracle import (
    brute_force_matches, direct_construct, solution_mappings, sparql_construct_answer,
    sparql_select_answer,
)
from poimql.syntax import parse_data, parse_pattern

G = parse_data(':alice :name "Alice" . :alice :nick "Lissie" . :bob :name "Bob" . _:c :name "Cee"')


def test_solution_mappings():
    mus = solution_mappings(parse_pattern("?x :name ?n"), G)
    assert len(mus) == 3
    assert {var("x"): iri(":alice"), var("n"): lit("Alice")} in mus
    assert solution_mappings(Graph(), G) == [{}]
    assert solution_mappings(parse_pattern("?x :none ?n"), G) == []


def test_pattern_blanks_bind_like_variables():
    mus = solution_mappings(parse_pattern('_:s :name "Cee"'), G)
    assert mus == [{blank("s"): blank("c")}]


def test_direct_construct_renews_template_blanks_per_solution():
    h = direct_construct(parse_pattern("?x :name ?n"), parse_pattern("_:b :FN ?n"), G)
    assert len(h) == 3 and len(h.blanks()) == 3
    assert blank("c") not in h.blanks()


def test_direct_construct_keeps_data_blanks():
    h = direct_construct(parse_pattern("?x :name ?n"), parse_pattern("?x :FN ?n"), G)
    assert (blank("c"), iri(":FN"), lit("Cee")) in h


def test_direct_construct_rdf_strict():
    h = direct_construct(parse_pattern("?x :name ?n"), parse_pattern("?n :of ?x"), G, rdf_strict=True)
    assert h == Graph()


def test_unbound_template_variable():
    with pytest.raises(UnboundVariables):
        direct_construct(parse_pattern("?x :name ?n"), parse_pattern("?x :FN ?z"), G)


def test_sparql_answer_matches_direct_without_pattern_blanks():
    l, r = parse_pattern("?x :name ?n"), parse_pattern("_:b :FN ?n . _:b :of ?x")
    assert find_isomorphism(sparql_construct_answer(l, r, G), direct_construct(l, r, G), I)


def test_sparql_answer_rejects_pattern_blanks():
    with pytest.raises(BlanksInL):
        sparql_construct_answer(parse_pattern("_:x :name ?n"), parse_pattern("?n :p :q"), G)


def test_sparql_select_counts_solutions():
    g = parse_data(":a :p :x . :a :p :y . :b :p :x")
    table = sparql_select_answer(parse_pattern("?s :p ?o"), (var("s"),), g)
    assert Counter(table.rows) == Counter({(iri(":a"),): 2, (iri(":b"),): 1})
    with pytest.raises(ValueError):
        sparql_select_answer(parse_pattern("?s :p ?o"), (var("z"),), g)


def test_brute_force_matches():
    found = brute_force_matches(parse_pattern("?x :name ?n"), G)
    assert frozenset({(var("x"), iri(":bob")), (var("n"), lit("Bob"))}) in found
    assert len(found) == 3
    assert brute_force_matches(Graph(), G) == {frozenset()}


def test_brute_force_guard():
    l = Graph([(var(f"v{i}"), iri(":p"), var(f"w{i}")) for i in range(5)])
    with pytest.raises(TooLarge):
        brute_force_matches(l, G)
