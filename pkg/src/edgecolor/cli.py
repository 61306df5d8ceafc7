"""``edgecolor`` command line: generate, color, verify, bench."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bench import ALGORITHMS, RunConfig, compare, run, verify_serialized
from .errors import EdgeColorError
from .generators import generate
from .graph import WeightedGraph, format_edge_list


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _source_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file, one 'u v' pair per line")
    src.add_argument("--spec", help="generator spec, e.g. gnm:50:100")
    p.add_argument("--seed", type=int, default=0, help="generator seed (64-bit)")


def _run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eps", type=_fraction, default=None, help="accuracy parameter in (0, 1)")
    p.add_argument("--delta", type=int, default=None, help="declared degree bound (default: measured)")
    p.add_argument("--threshold", type=float, default=None, help="override the splitting threshold of --algo full")
    p.add_argument("--assert", dest="mode", choices=("hard", "report"), default="hard")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgecolor", description="Deterministic distributed edge-coloring algorithms.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a generated graph as an edge list")
    g.add_argument("spec", help="generator spec, e.g. dregular:6:5 or weighted:gnm:10:20:5")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output path (default: stdout)")

    c = sub.add_parser("color", help="color a graph and report")
    _source_args(c)
    c.add_argument("--algo", choices=ALGORITHMS, required=True)
    c.add_argument("--out", help="write the coloring here, one 'u v color' line per edge")
    c.add_argument("--result", help="also write the JSON result here")
    _run_args(c)

    v = sub.add_parser("verify", help="check a coloring file against a graph file")
    v.add_argument("--input", required=True, help="edge-list file")
    v.add_argument("--coloring", required=True, help="coloring file")
    v.add_argument("--bound", type=int, default=None, help="maximum allowed number of colors")

    b = sub.add_parser("bench", help="run several algorithms on one input and tabulate")
    _source_args(b)
    b.add_argument("--algo", default="greedy-baseline,threehalves,eps", help="comma-separated algorithms")
    b.add_argument("--out", help="write the table here (default: stdout)")
    _run_args(b)
    b.set_defaults(format="csv")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args, algo: str, out=None, result=None) -> RunConfig:
    return RunConfig(
        algorithm=algo,
        eps=args.eps,
        seed=args.seed,
        input=args.input,
        spec=args.spec,
        out=out,
        result=result,
        mode=args.mode,
        delta=args.delta,
        threshold=args.threshold,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            g = generate(args.spec, args.seed)
            if isinstance(g, tuple):
                g = g[0]
            text = format_edge_list(g.graph, g.w) if isinstance(g, WeightedGraph) else format_edge_list(g)
            _emit(text, args.out)
            return 0
        if args.command == "color":
            res = run(_config(args, args.algo, args.out, args.result))
            _emit(res.to_json() if args.format == "json" else compare([res]), None)
            if not res.ok:
                print(f"edgecolor: guarantee or validator failure: {_first_failure(res.verdicts)}", file=sys.stderr)
            return 0 if res.ok else 1
        if args.command == "verify":
            verdict = verify_serialized(Path(args.input).read_text(), Path(args.coloring).read_text(), args.bound)
            sys.stdout.write(json.dumps(verdict, indent=2) + "\n")
            ok = verdict["proper_coloring"]["ok"] and verdict["color_classes_are_matchings"]["ok"]
            ok = ok and verdict.get("within_bound", {"ok": True})["ok"]
            return 0 if ok else 1
        results = [run(_config(args, a.strip())) for a in args.algo.split(",") if a.strip()]
        if args.format == "csv":
            _emit(compare(results), args.out)
        else:
            _emit(json.dumps([json.loads(r.to_json()) for r in results], indent=2) + "\n", args.out)
        return 0 if all(r.ok for r in results) else 1
    except (EdgeColorError, OSError) as exc:
        print(f"edgecolor: {exc}", file=sys.stderr)
        return 2


def _first_failure(verdicts: dict) -> str:
    for key in ("proper_coloring", "color_classes_are_matchings"):
        if not verdicts[key]["ok"]:
            return verdicts[key]["detail"]
    if "within_bound" in verdicts and not verdicts["within_bound"]["ok"]:
        return f"colors above bound {verdicts['within_bound']['bound']}"
    fails = verdicts["guarantees"]["failures"]
    return fails[0]["name"] + ": " + fails[0]["detail"] if fails else "unknown"


if __name__ == "__main__":
    sys.exit(main())
