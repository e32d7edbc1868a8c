"""Command-line front end: ``query``, ``match``, ``iso`` and ``diff``.

Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 usage or parse error, 2 semantic error, 3 a difference was found.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import ParseError, PoimError
from .graph import FixedSet, FreshSupply, Graph
from .matcher import enumerate_matches
from .morphism import find_isomorphism
from .oracle import direct_construct, sparql_construct_answer, sparql_select_answer
from .poim import CALCULI, construct_eval, make_rule
from .select import SelectQuery, select_eval
from .syntax import ConstructQuery, parse_data, parse_pattern, parse_query, serialize_graph

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SEMANTIC = 2
EXIT_DIFF = 3

log = logging.getLogger("poimql")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _UsageError(f"cannot read {path}: {e.strerror}") from None


class _UsageError(Exception):
    pass


def _load(data_path: str, query_path: str):
    try:
        g = parse_data(_read(data_path))
    except ParseError as e:
        raise ParseError(f"{data_path}: {e.message}", e.span) from None
    try:
        q = parse_query(_read(query_path))
    except ParseError as e:
        raise ParseError(f"{query_path}: {e.message}", e.span) from None
    return g, q


def cmd_query(args, out) -> int:
    g, q = _load(args.data, args.query)
    supply = FreshSupply(args.seed)
    if isinstance(q, SelectQuery):
        table = select_eval(q, g, supply, args.calculus).canonical_blanks()
        out.write(table.to_csv() if args.format == "csv" else table.to_text())
        return EXIT_OK
    rule = make_rule(q.pattern, q.template, supply, strict=not args.compat_drop_unbound)
    h = construct_eval(rule, g, supply, args.calculus, rdf_strict=args.rdf_strict)
    text = serialize_graph(h, canonical_blanks=True)
    if text:
        out.write(text + "\n")
    return EXIT_OK


def cmd_match(args, out) -> int:
    g, q = _load(args.data, args.query)
    pattern = q.pattern
    columns = sorted(x for x in pattern.attributes() if not x.is_resource)
    matches = enumerate_matches(pattern, g)
    if columns:
        out.write("\t".join(str(x) for x in columns) + "\n")
        for m in matches:
            out.write("\t".join(str(m(x)) for x in columns) + "\n")
    n = len(matches)
    out.write(f"{n} match{'' if n == 1 else 'es'}\n")
    return EXIT_OK


def cmd_iso(args, out) -> int:
    fixed = FixedSet.named(args.fixing)
    graphs = []
    for path in (args.first, args.second):
        try:
            graphs.append(parse_pattern(_read(path)))
        except ParseError as e:
            raise ParseError(f"{path}: {e.message}", e.span) from None
    witness = find_isomorphism(graphs[0], graphs[1], fixed)
    if witness is None:
        out.write("not isomorphic\n")
        return EXIT_DIFF
    out.write(f"isomorphic in {fixed}\n")
    for x, y in sorted(witness.moved().items()):
        out.write(f"{x} -> {y}\n")
    return EXIT_OK


def _diff_construct(q: ConstructQuery, g: Graph, args):
    strict = not args.compat_drop_unbound
    results = {}
    for calculus in CALCULI:
        supply = FreshSupply(args.seed)
        rule = make_rule(q.pattern, q.template, supply, strict=strict)
        results[calculus] = construct_eval(rule, g, supply, calculus, rdf_strict=args.rdf_strict)
    template = make_rule(q.pattern, q.template, FreshSupply(), strict=strict).r
    results["direct"] = direct_construct(q.pattern, template, g, rdf_strict=args.rdf_strict)
    if not q.pattern.blanks():
        results["sparql"] = sparql_construct_answer(q.pattern, template, g, rdf_strict=args.rdf_strict)
    names = list(results)
    for a, b in zip(names, names[1:]):
        if find_isomorphism(results[a], results[b], FixedSet.named("I")) is None:
            return a, b, serialize_graph(results[a], True), serialize_graph(results[b], True)
    return None


def _diff_select(q: SelectQuery, g: Graph, args):
    results = {c: select_eval(q, g, FreshSupply(args.seed), c) for c in CALCULI}
    results["sparql"] = sparql_select_answer(q.pattern, q.projection, g)
    names = list(results)
    for a, b in zip(names, names[1:]):
        if not results[a].same_up_to_blanks(results[b]):
            return a, b, results[a].to_text(), results[b].to_text()
    return None


def cmd_diff(args, out) -> int:
    g, q = _load(args.data, args.query)
    if isinstance(q, SelectQuery):
        found = _diff_select(q, g, args)
    else:
        found = _diff_construct(q, g, args)
    if found is None:
        out.write("all calculi agree\n")
        return EXIT_OK
    a, b, text_a, text_b = found
    out.write(f"{a} and {b} disagree\n--- {a}\n{text_a}\n--- {b}\n{text_b}\n")
    return EXIT_DIFF


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="poimql", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def evaluation_flags(p):
        p.add_argument("--compat-drop-unbound", action="store_true",
                       help="drop template triples with unbound variables instead of failing")
        p.add_argument("--rdf-strict", action="store_true",
                       help="keep only RDF triples in CONSTRUCT output")
        p.add_argument("--seed", type=int, default=0, help="offset of the fresh-blank counter")

    q = sub.add_parser("query", help="evaluate a CONSTRUCT or SELECT query")
    q.add_argument("data")
    q.add_argument("query")
    q.add_argument("--calculus", choices=CALCULI, default="low")
    q.add_argument("--format", choices=("text", "csv"), default="text")
    evaluation_flags(q)
    q.set_defaults(func=cmd_query)

    m = sub.add_parser("match", help="list the matches of the query pattern")
    m.add_argument("data")
    m.add_argument("query")
    m.set_defaults(func=cmd_match)

    i = sub.add_parser("iso", help="test two graphs for isomorphism")
    i.add_argument("first")
    i.add_argument("second")
    i.add_argument("--fixing", choices=("I", "IV", "IB", "IBV"), default="I")
    i.set_defaults(func=cmd_iso)

    d = sub.add_parser("diff", help="check that both calculi and the oracle agree")
    d.add_argument("data")
    d.add_argument("query")
    evaluation_flags(d)
    d.set_defaults(func=cmd_diff)
    return parser


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    out = sys.stdout if out is None else out
    try:
        return args.func(args, out)
    except (ParseError, _UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PoimError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
