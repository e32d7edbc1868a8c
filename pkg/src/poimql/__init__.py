"""Basic CONSTRUCT and SELECT queries over triple graphs, evaluated by
pushout + image factorization, with a direct evaluator to check against."""

from .colimit import coproduct, image_factorization, pushout
from .graph import (
    FixedSet, FreshSupply, Graph, I, IB, IBV, IV, Kind, Term, Triple,
    attributes, blank, iri, is_rdf_graph, lit, partition_attributes, var,
)
from .matcher import enumerate_matches, match_image
from .morphism import Morphism, check_morphism, find_isomorphism, identity, rename_blanks
from .poim import (
    ConstructRule, construct_eval, construct_high, construct_low, k_fold_rule, make_rule,
    poim_apply,
)
from .select import Multirelation, SelectQuery, gr, is_relational_data_graph, rel, select_eval
from .syntax import ConstructQuery, parse_data, parse_pattern, parse_query, serialize_graph

__all__ = [
    "ConstructQuery", "ConstructRule", "FixedSet", "FreshSupply", "Graph", "I", "IB", "IBV",
    "IV", "Kind", "Morphism", "Multirelation", "SelectQuery", "Term", "Triple", "attributes",
    "blank", "check_morphism", "construct_eval", "construct_high", "construct_low",
    "coproduct", "enumerate_matches", "find_isomorphism", "gr", "identity",
    "image_factorization", "iri", "is_rdf_graph", "is_relational_data_graph", "k_fold_rule",
    "lit", "make_rule", "match_image", "parse_data", "parse_pattern", "parse_query",
    "partition_attributes", "poim_apply", "pushout", "rel", "rename_blanks", "select_eval",
    "serialize_graph", "var",
]
