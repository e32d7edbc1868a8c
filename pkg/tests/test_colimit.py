import random

import pytest
from hypothesis import given, settings, strategies as st

from poimql.colimit import coproduct, image_factorization, pushout
from poimql.errors import InvalidInclusion
from poimql.graph import I, IB, IV, FixedSet, FreshSupply, Graph, blank, iri, lit, var
from poimql.morphism import Morphism, find_isomorphism
from poimql.syntax import parse_data, parse_pattern

from randgraphs import graphs, pushout_universal_holds, random_pushout_instance

G = parse_data(':alice :name "Alice" . :alice :nick "Lissie"')
L = parse_pattern("?x :name ?name")
K = parse_pattern("?x :name ?name . ?x :FN ?name")
M = Morphism(L, G, {var("x"): iri(":alice"), var("name"): lit("Alice"), iri(":name"): iri(":name")}, I)


def test_coproduct_of_nothing():
    assert coproduct([], I, FreshSupply()) == (Graph(), [])


def test_coproduct_separates_blanks():
    parts = [parse_data('_:c :FN "Alice"'), parse_data('_:c :FN "Bob"')]
    total, injections = coproduct(parts, I, FreshSupply())
    assert len(total) == 2 and len(total.blanks()) == 2
    assert find_isomorphism(total, parse_data('_:c1 :FN "Alice" . _:c2 :FN "Bob"'), I)
    assert [inj.image() for inj in injections] == [Graph([t]) for t in sorted(
        total, key=lambda t: t.object)]


def test_coproduct_shares_data_blanks():
    data = parse_data(":alice :knows :bob . :bob :knows _:c . _:c :knows :alice")
    parts = [parse_data(":alice :acquaintedWith _:c"), parse_data("_:c :acquaintedWith :bob")]
    total, _ = coproduct(parts, FixedSet.ib_of(data), FreshSupply())
    assert total == parts[0] | parts[1]


def test_pushout_with_nothing_to_add():
    po = pushout((L, L), M, I, FreshSupply())
    assert po.d == G
    assert dict(po.n.mapping) == dict(M.mapping)


def test_pushout_instantiates_variables():
    po = pushout((L, K), M, I, FreshSupply())
    assert po.d == parse_data(':alice :name "Alice" . :alice :nick "Lissie" . :alice :FN "Alice"')
    assert po.g.image() == G


def test_pushout_mints_a_fresh_blank():
    k = parse_pattern("?x :name ?name . _:y :FN ?name")
    po = pushout((L, k), M, I, FreshSupply())
    new = po.d - G
    assert len(new) == 1
    (t,) = new
    assert t.subject.is_blank and t.subject not in G.attributes()
    assert (t.predicate, t.object) == (iri(":FN"), lit("Alice"))


def test_pushout_never_reuses_a_data_blank():
    g = Graph([(blank("fresh1"), iri(":name"), lit("Alice"))])
    l = parse_pattern("?x :name ?name")
    k = l | parse_pattern("_:y :FN ?name")
    m = Morphism(l, g, {var("x"): blank("fresh1"), var("name"): lit("Alice"),
                        iri(":name"): iri(":name")}, I)
    po = pushout((l, k), m, I, FreshSupply())
    assert len(po.d.blanks()) == 2


def test_pushout_requires_inclusion():
    with pytest.raises(InvalidInclusion):
        pushout((K, L), M, I, FreshSupply())


def test_image_of_empty_right_side():
    po = pushout((L, K), M, I, FreshSupply())
    assert image_factorization((Graph(), K), po.n).h == Graph()


def test_image_factorization_keeps_only_the_right_side():
    po = pushout((L, K), M, I, FreshSupply())
    im = image_factorization((parse_pattern("?x :FN ?name"), K), po.n)
    assert im.h == parse_data(':alice :FN "Alice"')


def test_image_factorization_with_blank():
    k = parse_pattern("?x :name ?name . _:y :FN ?name")
    po = pushout((L, k), M, I, FreshSupply())
    im = image_factorization((parse_pattern("_:y :FN ?name"), k), po.n)
    assert len(im.h) == 1 and find_isomorphism(im.h, parse_data('_:b :FN "Alice"'), I)
    assert im.p(blank("y")) == po.n(blank("y"))


def test_image_factorization_requires_inclusion():
    po = pushout((L, K), M, I, FreshSupply())
    with pytest.raises(InvalidInclusion):
        image_factorization((parse_pattern("?x :other ?name"), K), po.n)


def test_inclusion_after_image_is_the_restriction():
    r = parse_pattern("?x :FN ?name")
    po = pushout((L, K), M, I, FreshSupply())
    im = image_factorization((r, K), po.n)
    composed = im.p.then(im.inclusion)
    assert dict(composed.mapping) == dict(po.n.restrict(r).mapping)


@pytest.mark.parametrize("seed", range(40))
def test_pushout_universal_property(seed):
    cones, failures = pushout_universal_holds(*random_pushout_instance(random.Random(seed)))
    assert cones >= 1 and failures == 0


@pytest.mark.parametrize("seed", range(40))
def test_pushout_attributes(seed):
    l, k, m, g, _ = random_pushout_instance(random.Random(seed))
    po = pushout((l, k), m, I, FreshSupply())
    outside = k.attributes() - l.attributes()
    assert po.d.attributes() == g.attributes() | {po.n(x) for x in outside}


@settings(max_examples=100, deadline=None)
@given(st.lists(graphs(), max_size=4), st.sampled_from([I, IV, IB]))
def test_coproduct_injections_jointly_surjective(parts, fixed):
    total, injections = coproduct(parts, fixed, FreshSupply())
    images = [inj.image() for inj in injections]
    assert Graph(t for im in images for t in im.triples) == total
    for part, inj, im in zip(parts, injections, images):
        assert find_isomorphism(part, im, fixed) is not None
    for i, a in enumerate(images):
        for b in images[i + 1:]:
            assert all(x in fixed for x in a.attributes() & b.attributes())
