"""Command-line interface.

Exit codes: 0 success, 1 unexpected mismatch or failed self-test,
2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from .domination import Kind, solve_minimum, solver_backend
from .epgraph import Mode, build_epg, connected_components, export_dot, export_json_dict
from .errors import EpgdomError, ResourceLimit
from .formulas import domination_formula, strong_domination_formula
from .groups import construct_group, nilpotent_profile, parse_group_spec
from .harness import (
    Budgets,
    default_catalog,
    load_catalog,
    run_verify,
    solver_selftest,
)
from .errors import NotNilpotent

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3

_KIND_BY_FLAG = {"dom": Kind.DOMINATING, "total": Kind.TOTAL}


def _cmd_info(args) -> int:
    group = construct_group(parse_group_spec(args.spec))
    print(f"spec:        {group.source}")
    print(f"order:       {group.order}")
    print(f"validation:  {group.validation}")
    try:
        profile = nilpotent_profile(group)
    except NotNilpotent as exc:
        print(f"profile:     not nilpotent (witness prime {exc.prime})")
        return EXIT_OK
    if not profile.factors:
        print("profile:     trivial group")
        return EXIT_OK
    for f in profile.factors:
        line = (f"  p={f.p} order={f.order} class={f.classification.value} r={f.r}")
        if f.k is not None:
            line += f" k={f.k}"
        print(line)
    strong = strong_domination_formula(profile)
    dom = domination_formula(profile)
    print(f"strong domination formula: {strong.value if strong.is_number else strong.special}"
          f" [{strong.case_tag}]")
    print(f"domination formula:        {dom.value if dom.is_number else dom.special}"
          f" [{dom.case_tag}]")
    return EXIT_OK


def _cmd_graph(args) -> int:
    group = construct_group(parse_group_spec(args.spec))
    graph = build_epg(group, Mode(args.mode))
    comps = connected_components(graph)
    print(f"{graph.source} mode={graph.mode.value}: "
          f"{graph.n} vertices, {graph.edge_count} edges, {len(comps)} components")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(export_dot(graph))
        print(f"wrote {args.dot}")
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(export_json_dict(graph), fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.json}")
    return EXIT_OK


def _cmd_dominate(args) -> int:
    group = construct_group(parse_group_spec(args.spec))
    graph = build_epg(group, Mode(args.mode))
    cert = solve_minimum(graph, _KIND_BY_FLAG[args.kind], args.budget)
    print(json.dumps(cert.to_json_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.catalog:
        catalog = load_catalog(args.catalog)
    elif args.spec:
        catalog = []
    else:
        catalog = default_catalog()
    for text in args.spec or ():
        from .harness import CatalogEntry  # local import keeps startup lean

        catalog.append(CatalogEntry(parse_group_spec(text)))
    budgets = Budgets(node_budget=args.budget or 0)
    report = run_verify(catalog, output_path=args.out, budgets=budgets,
                        fmt=args.format, workers=args.workers)
    for row in report.rows:
        flag = " (expected)" if row.expected_mismatch else ""
        print(f"{row.spec:16s} order={row.order:<5d} verdict={row.verdict}{flag}")
    print(f"backend={solver_backend()} "
          f"unexpected_mismatches={len(report.unexpected_mismatches)} "
          f"out={args.out}")
    return report.exit_code


def _cmd_selftest(args) -> int:
    summary = solver_selftest(seed=args.seed, trials=args.trials, max_n=args.max_n)
    if summary.passed:
        print(f"selftest PASS: {summary.comparisons} comparisons over "
              f"{summary.trials} graphs (seed={summary.seed})")
        return EXIT_OK
    print("selftest FAIL on first disagreeing instance:")
    print(json.dumps(summary.failure, indent=2, sort_keys=True))
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epgdom",
        description="Enhanced power graph domination toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="group order, Sylow profile and formula values")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("graph", help="build a graph and optionally export it")
    p.add_argument("spec")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="full")
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("dominate", help="exact minimum (total) dominating set")
    p.add_argument("spec")
    p.add_argument("--kind", choices=["dom", "total"], default="dom")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="proper")
    p.add_argument("--budget", type=int, default=None, metavar="N")
    p.set_defaults(func=_cmd_dominate)

    p = sub.add_parser("verify", help="run the verification harness")
    p.add_argument("--catalog", metavar="FILE")
    p.add_argument("--spec", action="append", metavar="S")
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--workers", type=int, default=1, metavar="N")
    p.add_argument("--budget", type=int, default=None, metavar="N")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("selftest", help="solver vs brute-force oracle on random graphs")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-n", type=int, default=14)
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (EpgdomError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
