"""Command-line entry point: ``hasseforge run | list | explain``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .. import __version__
from ..errors import ConfigInvalid, UnknownScenario
from .scenarios import DESCRIPTIONS, EXPLANATIONS, builtin_names, load_config, run_scenario

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hasseforge", description="Exact checks for iterative derivations.")
    parser.add_argument("--version", action="version", version=f"hasseforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one or more scenario configs")
    run.add_argument("configs", nargs="+", metavar="CONFIG", help="path to a JSON config or builtin:<name>")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    run.add_argument("--out", default=None, help="also write the JSON report to this file")
    run.add_argument("--parallel", action="store_true", help="run scenarios in separate processes")
    run.add_argument("--trunc", type=int, default=None, help="global truncation order override")

    sub.add_parser("list", help="list the built-in scenarios")

    exp = sub.add_parser("explain", help="describe the mathematics a built-in scenario exercises")
    exp.add_argument("name")
    return parser


def _run_one(args):
    cfg, seed, trunc = args
    return run_scenario(cfg, seed, trunc)


def render_json(reports: list[dict]) -> str:
    if len(reports) == 1:
        doc = reports[0]
    else:
        doc = {"tool": "hasseforge", "version": __version__, "passed": all(r["passed"] for r in reports),
               "reports": reports}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render_text(report: dict, timings: list[float]) -> str:
    lines = [f"scenario {report['scenario']} (seed {report['seed']}, trunc {report['trunc']})"]
    for r, dt in zip(report["results"], timings):
        lines.append(f"  [{'PASS' if r['passed'] else 'FAIL'}] {r['op']}: {r['summary']} ({dt:.2f}s)")
        for ce in r["details"].get("counterexamples", [])[:3] if isinstance(r["details"], dict) else []:
            lines.append(f"      counterexample {ce['axiom']}: inputs {ce['inputs']}")
    for c in report["caveats"]:
        lines.append(f"  caveat: {c}")
    lines.append(f"  => {'PASS' if report['passed'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def cmd_run(args) -> int:
    try:
        cfgs = [load_config(src) for src in args.configs]
    except (ConfigInvalid, UnknownScenario) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    jobs = [(cfg, args.seed, args.trunc) for cfg in cfgs]
    try:
        if args.parallel and len(jobs) > 1:
            with ProcessPoolExecutor() as pool:
                outcomes = list(pool.map(_run_one, jobs))
        else:
            outcomes = [_run_one(j) for j in jobs]
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    outcomes.sort(key=lambda o: o[0]["scenario"])
    reports = [o[0] for o in outcomes]
    doc = render_json(reports)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc)
    if args.format == "json":
        sys.stdout.write(doc)
    else:
        for report, timings in outcomes:
            sys.stdout.write(render_text(report, timings))
    return EXIT_OK if all(r["passed"] for r in reports) else EXIT_FAIL


def cmd_list(args) -> int:
    width = max(map(len, DESCRIPTIONS))
    for name in builtin_names():
        print(f"{name:<{width}}  {DESCRIPTIONS[name]}")
    return EXIT_OK


def cmd_explain(args) -> int:
    name = args.name.removeprefix("builtin:")
    if name not in EXPLANATIONS:
        print(f"error: {UnknownScenario(name)}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"{name}: {DESCRIPTIONS[name]}\n")
    print(EXPLANATIONS[name])
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("HASSEFORGE_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    handler = {"run": cmd_run, "list": cmd_list, "explain": cmd_explain}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
