"""Command line front end.

Subcommands: generate, check, reduce, verify-tables, census.
Graph inputs are family specs ("GP(24,5)") or raw graph6 behind a "g6:"
prefix.  Exit codes: 0 pass, 1 predicate false or verification failure,
2 usage error, 3 budget or cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .autgrp import (
    automorphism_group,
    is_arc_transitive,
    is_vertex_transitive,
    rank,
)
from .classify import census, is_bicirculant, is_circulant, reduce_graph
from .errors import BicircError, OrderCapExceeded, ParseError, SearchBudgetExceeded
from .graphs import basic_props, graph6_decode, graph6_encode
from .families import build_spec
from . import tables

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class Config:
    cap: int = 10**6
    budget: int = 10**8
    jobs: int = 1
    fmt: str = "text"

    @classmethod
    def from_args(cls, args):
        def pick(flag, env, default, cast=int):
            if flag is not None:
                return flag
            value = os.environ.get(env)
            return cast(value) if value is not None else default

        cfg = cls(
            cap=pick(args.cap, "BICIRC_CAP", 10**6),
            budget=pick(args.budget, "BICIRC_BUDGET", 10**8),
            jobs=pick(args.jobs, "BICIRC_JOBS", 1),
            fmt=pick(args.format, "BICIRC_FORMAT", "text", str),
        )
        if cfg.cap <= 0 or cfg.budget <= 0 or cfg.jobs <= 0:
            raise ParseError("caps, budgets and job counts must be positive")
        return cfg


def _load_graph(text):
    if text.startswith("g6:"):
        return graph6_decode(text[3:]), None
    return build_spec(text)


def cmd_generate(args, cfg, out):
    graph, _witness = _load_graph(args.spec)
    print(graph6_encode(graph), file=out)
    return EXIT_OK


_PREDICATES = (
    "circulant",
    "bicirculant",
    "vertex-transitive",
    "arc-transitive",
    "aut-order",
    "rank",
    "props",
)


def cmd_check(args, cfg, out):
    graph, witness = _load_graph(args.spec)
    wanted = args.predicates or ["props"]
    results = {}
    ok = True
    group = None

    def aut():
        nonlocal group
        if group is None:
            group = automorphism_group(graph, node_budget=cfg.budget)
        return group

    for pred in wanted:
        if pred == "circulant":
            found = is_circulant(graph, node_budget=cfg.budget)
            results[pred] = found.cycle_string() if found else False
            ok = ok and found is not None
        elif pred == "bicirculant":
            found = is_bicirculant(graph, node_budget=cfg.budget)
            results[pred] = found.perm.cycle_string() if found else False
            ok = ok and found is not None
        elif pred == "vertex-transitive":
            value = is_vertex_transitive(graph, aut())
            results[pred] = value
            ok = ok and value
        elif pred == "arc-transitive":
            value = is_arc_transitive(graph, aut())
            results[pred] = value
            ok = ok and value
        elif pred == "aut-order":
            results[pred] = aut().order()
        elif pred == "rank":
            results[pred] = rank(graph, aut())
        elif pred == "props":
            props = basic_props(graph)
            results[pred] = {
                "n": graph.n,
                "connected": props.connected,
                "bipartite": props.bipartite,
                "regular": props.regular,
                "valency": props.valency,
                "girth": props.girth_text(),
            }
        else:
            raise ParseError(f"unknown predicate {pred!r}; choose from {_PREDICATES}")
    if cfg.fmt == "json":
        print(json.dumps({"input": args.spec, "results": results}), file=out)
    else:
        for pred, value in results.items():
            print(f"{pred}: {value}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reduce(args, cfg, out):
    graph, witness = _load_graph(args.spec)
    bw = None
    if witness is not None and witness.cycle_type == (graph.n // 2, graph.n // 2):
        from .classify import BicirculantWitness

        bw = BicirculantWitness.from_perm(witness.perm)
    report = reduce_graph(graph, witness=bw, cap=cfg.cap, node_budget=cfg.budget)
    print(report.to_json(indent=2 if cfg.fmt == "text" else None), file=out)
    return EXIT_OK if report.verdict else EXIT_FAIL


def cmd_verify_tables(args, cfg, out):
    which = args.which
    runners = {
        "1": tables.verify_table_cubic,
        "2": tables.verify_table_pentavalent,
        "lemmas": tables.verify_lemmas,
        "census": tables.verify_census,
    }
    names = ["1", "2", "lemmas", "census"] if which == "all" else [which]
    all_ok = True
    for name in names:
        ok = runners[name](cfg, out)
        all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_census(args, cfg, out):
    entries = census(args.max_n, args.max_valency, jobs=cfg.jobs, node_budget=cfg.budget)
    if cfg.fmt == "json":
        payload = [
            {
                "vertices": e.graph.n,
                "frame": e.frame,
                "graph6": graph6_encode(e.graph),
                "valency": basic_props(e.graph).valency,
            }
            for e in entries
        ]
        print(json.dumps(payload, indent=2), file=out)
    else:
        for e in entries:
            print(
                f"{e.graph.n:4d} vertices  valency {basic_props(e.graph).valency}"
                f"  {e.frame}  {graph6_encode(e.graph)}",
                file=out,
            )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bicirc",
        description="Build symmetric graph families, compute automorphism "
        "groups, and verify normal quotient reductions.",
    )
    parser.add_argument("--cap", type=int, default=None, help="element enumeration cap")
    parser.add_argument("--budget", type=int, default=None, help="search node budget")
    parser.add_argument("--jobs", type=int, default=None, help="parallel workers")
    parser.add_argument("--format", choices=("text", "json"), default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a family instance as graph6")
    p.add_argument("spec")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", help="run predicates on a graph")
    p.add_argument("spec")
    p.add_argument("predicates", nargs="*", metavar="predicate",
                   help=f"any of {', '.join(_PREDICATES)}")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", help="normal quotient reduction report (JSON)")
    p.add_argument("spec")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify-tables", help="re-derive the published tables")
    p.add_argument("which", choices=("1", "2", "lemmas", "census", "all"))
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("census", help="enumerate small arc-transitive bicirculants")
    p.add_argument("max_n", type=int)
    p.add_argument("max_valency", type=int)
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = Config.from_args(args)
        return args.func(args, cfg, out)
    except (OrderCapExceeded, SearchBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, BicircError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
