"""Command-line workbench.

Exit codes: 0 on success, 1 on a failed verification or an operational
error, 2 on usage errors.  Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys

from .errors import OrdcoverError
from .ordinals import EQUAL, GREATER, LESS, compare
from .cover import FundIndex, SuccessorStep, chain, covers, fund_seq, up_set
from .words import canonicalize, degree_word
from .graphs import build_prefix, restrict_by_degree_word, to_dot, to_json
from .stacks import (
    build_exprs,
    decode_iso,
    decode_raw,
    encode_iso,
    enumerate_domain,
    in_relation,
    parse_opexpr,
    parse_stack,
    size_bound_filter,
)
from .strictsets import c_set, s_alpha, trace_tree, trace_tree_dot
from .verify import SUITES, run_suite
from .parsing import format_ordinal, format_word, parse_ordinal


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordcover",
        description="workbench for covering graphs of ordinals below epsilon-0",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="parse an ordinal expression and print its canonical form")
    p.add_argument("expr")

    p = sub.add_parser("cmp", help="compare two ordinals: LT, EQ or GT")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("fund", help="initial members of the fundamental sequence")
    p.add_argument("expr")
    p.add_argument("--count", type=int, default=5)

    p = sub.add_parser("covers", help="covering witness from A to B: s, f K, or none")
    p.add_argument("lower")
    p.add_argument("upper")

    p = sub.add_parser("upset", help="covering successors of L below a bound")
    p.add_argument("expr")
    p.add_argument("--bound", required=True)

    p = sub.add_parser("chain", help="covering chain from A up to B")
    p.add_argument("lower")
    p.add_argument("upper")

    p = sub.add_parser("word", help="degree word of the covering graph below A")
    p.add_argument("expr")
    p.add_argument("--compact", action="store_true")

    p = sub.add_parser("graph", help="export a covering-graph prefix")
    p.add_argument("expr")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--annotate", action="store_true")

    p = sub.add_parser("restrict", help="restrict a prefix by a smaller ordinal's degree word")
    p.add_argument("expr")
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json"), default="json")

    p = sub.add_parser("stack", help="nested-stack encodings and relations")
    stack_sub = p.add_subparsers(dest="stack_command", required=True)

    q = stack_sub.add_parser("encode", help="encode an ordinal as a level-N stack")
    q.add_argument("expr")
    q.add_argument("--level", type=int, required=True)

    q = stack_sub.add_parser("decode", help="decode a stack to an ordinal")
    q.add_argument("stack")
    q.add_argument("--raw", action="store_true", help="literal power-sum reading")

    q = stack_sub.add_parser("rel", help="test a stack pair against an operation expression")
    q.add_argument("source")
    q.add_argument("target")
    q.add_argument("--expr", required=True, help="dom|inc|dec|tail or a raw expression")
    q.add_argument("--level", type=int, default=2)
    q.add_argument("--budget", type=int, default=100_000)
    q.add_argument(
        "--prune",
        action="store_true",
        help="bound the search by the given stacks (sound for dom/inc/dec)",
    )

    q = stack_sub.add_parser("domain", help="enumerate stacks reachable from the empty stack")
    q.add_argument("--expr", default="dom")
    q.add_argument("--level", type=int, default=2)
    q.add_argument("--budget", type=int, default=10_000)
    q.add_argument("--limit", type=int, default=50)

    p = sub.add_parser("cset", help="subset-power ordinal set at level N topped by K")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)

    p = sub.add_parser("salpha", help="marked set grown from A inside an ambient bound")
    p.add_argument("expr")
    p.add_argument("--ambient", required=True)
    p.add_argument("--cap", type=int, default=256)

    p = sub.add_parser("tree", help="comb trace tree as DOT")
    p.add_argument("n", type=int)
    p.add_argument("--spine", type=int, required=True)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("name", choices=sorted(SUITES) + ["all"])
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--pairs", type=int)
    p.add_argument("--quadruples", type=int)
    p.add_argument("--max", dest="max_m", type=int)
    p.add_argument("--level", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--alpha")
    p.add_argument("--prefix", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--direct-depth", dest="direct_depth", type=int)
    p.add_argument("--K", dest="big_k", type=int)
    p.add_argument("--seed", type=int)

    return parser


_VERIFY_PARAMS = {
    "transitive": ("pairs", "seed"),
    "crossing-free": ("quadruples", "seed"),
    "degree": ("n",),
    "periodic": ("samples", "seed"),
    "lex": ("n", "samples", "seed"),
    "phi-u-matrix": ("max_m",),
    "restriction": (),
    "treegraph-phi": ("alpha", "prefix", "depth", "direct_depth"),
    "hopda-order": ("level", "budget", "count"),
    "c-cardinality": (),
    "cnk": (),
    "tail-sequence": ("n", "big_k"),
}


def _run_verify(args) -> int:
    if args.name == "all":
        results = run_suite("all")
    else:
        params = {}
        for key in _VERIFY_PARAMS[args.name]:
            value = getattr(args, key)
            if value is not None:
                params[key] = value
        results = run_suite(args.name, **params)
    ok = True
    for result in results:
        print(result.line())
        ok = ok and result.passed
    return 0 if ok else 1


def _named_expr(name: str, level: int):
    exprs = build_exprs(level)
    if name in exprs._fields:
        return getattr(exprs, name)
    return parse_opexpr(name)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except OrdcoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "eval":
        print(format_ordinal(parse_ordinal(args.expr)))
    elif args.command == "cmp":
        c = compare(parse_ordinal(args.left), parse_ordinal(args.right))
        print({LESS: "LT", EQUAL: "EQ", GREATER: "GT"}[c])
    elif args.command == "fund":
        a = parse_ordinal(args.expr)
        for n in range(args.count):
            print(format_ordinal(fund_seq(a, n)))
    elif args.command == "covers":
        witness = covers(parse_ordinal(args.lower), parse_ordinal(args.upper))
        if isinstance(witness, SuccessorStep):
            print("s")
        elif isinstance(witness, FundIndex):
            print(f"f {witness.k}")
        else:
            print("none")
    elif args.command == "upset":
        for m in sorted(up_set(parse_ordinal(args.expr), parse_ordinal(args.bound))):
            print(format_ordinal(m))
    elif args.command == "chain":
        for step in chain(parse_ordinal(args.lower), parse_ordinal(args.upper)):
            print(format_ordinal(step))
    elif args.command == "word":
        w = canonicalize(degree_word(parse_ordinal(args.expr)))
        print(format_word(w.prefix, w.period, compact=args.compact))
    elif args.command == "graph":
        g = build_prefix(parse_ordinal(args.expr), args.depth)
        print(to_json(g) if args.format == "json" else to_dot(g, annotate=args.annotate))
    elif args.command == "restrict":
        g = build_prefix(parse_ordinal(args.expr), args.depth)
        restricted = restrict_by_degree_word(g, degree_word(parse_ordinal(args.target)))
        print(to_json(restricted) if args.format == "json" else to_dot(restricted))
    elif args.command == "stack":
        return _dispatch_stack(args)
    elif args.command == "cset":
        for a in sorted(c_set(args.n, args.k)):
            print(format_ordinal(a))
    elif args.command == "salpha":
        members = s_alpha(
            parse_ordinal(args.expr), parse_ordinal(args.ambient), args.cap
        )
        for a in sorted(members):
            print(format_ordinal(a))
    elif args.command == "tree":
        print(trace_tree_dot(trace_tree(args.n, args.spine)))
    elif args.command == "verify":
        return _run_verify(args)
    return 0


def _dispatch_stack(args) -> int:
    if args.stack_command == "encode":
        print(encode_iso(parse_ordinal(args.expr), args.level))
    elif args.stack_command == "decode":
        s = parse_stack(args.stack)
        print(format_ordinal(decode_raw(s) if args.raw else decode_iso(s)))
    elif args.stack_command == "rel":
        s = parse_stack(args.source)
        t = parse_stack(args.target)
        expr = _named_expr(args.expr, max(args.level, s.level))
        state_filter = size_bound_filter(s, t) if args.prune else None
        print(in_relation(s, t, expr, args.budget, state_filter).value)
    elif args.stack_command == "domain":
        expr = _named_expr(args.expr, args.level)
        stacks = enumerate_domain(expr, args.level, args.budget)
        for s in stacks[: args.limit]:
            print(s)
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
