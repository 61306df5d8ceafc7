"""Run one configured coloring, re-validate it from its serialized form, report."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .coloring import (
    RunContext,
    eps_edge_coloring,
    full_coloring,
    greedy_coloring,
    three_halves_budget,
    three_halves_coloring,
    tight_palette_coloring,
)
from .errors import GraphParseError, UsageError
from .generators import generate
from .graph import EdgeColoring, Graph, WeightedGraph, canon, format_edge_list, parse_edge_list, validate
from .ledger import eps_headline, report, split_headline, three_halves_headline

ALGORITHMS = ("eps", "threehalves", "full", "tight", "greedy-baseline")
NEEDS_EPS = ("eps", "full")


@dataclass
class RunConfig:
    algorithm: str
    eps: Fraction | None = None
    seed: int = 0
    input: str | None = None
    spec: str | None = None
    out: str | None = None
    result: str | None = None
    mode: str = "hard"
    delta: int | None = None
    threshold: float | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {self.algorithm!r}; expected one of {', '.join(ALGORITHMS)}")
        if self.mode not in ("hard", "report"):
            raise UsageError(f"assertion mode must be hard or report, got {self.mode!r}")
        if (self.input is None) == (self.spec is None):
            raise UsageError("give exactly one of an input path or a generator spec")
        if self.algorithm in NEEDS_EPS:
            if self.eps is None:
                self.eps = Fraction(1, 2)
            self.eps = Fraction(self.eps)
            if not 0 < self.eps < 1:
                raise UsageError(f"eps must lie in (0, 1), got {self.eps}")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")

    @property
    def source(self) -> str:
        return self.input if self.input is not None else f"{self.spec}@{self.seed}"

    def params(self) -> dict:
        out = {"eps": None if self.eps is None else str(self.eps), "seed": self.seed, "mode": self.mode}
        if self.delta is not None:
            out["delta"] = self.delta
        if self.threshold is not None:
            out["threshold"] = self.threshold
        return out


@dataclass
class RunResult:
    config: RunConfig
    graph: Graph
    coloring: EdgeColoring
    n: int
    delta_declared: int
    delta_measured: int
    colors_used: int
    bounds: dict
    ledger: dict
    verdicts: dict
    wall_ms: float
    ok: bool = True
    artifacts: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "input": self.config.source,
            "algorithm": self.config.algorithm,
            "params": self.config.params(),
            "n": self.n,
            "delta_declared": self.delta_declared,
            "delta_measured": self.delta_measured,
            "colors_used": self.colors_used,
            "bounds": self.bounds,
            "ledger": self.ledger,
            "verdicts": self.verdicts,
            "wall_ms": self.wall_ms,
        }

    def to_json(self, wall_time: bool = True) -> str:
        d = self.as_dict()
        if not wall_time:
            del d["wall_ms"]
        return json.dumps(d, indent=2, default=_jsonable) + "\n"


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def load_graph(config: RunConfig) -> Graph:
    if config.input is not None:
        text = Path(config.input).read_text()
        graph, _ = parse_edge_list(text)
        return graph
    g = generate(config.spec, config.seed)
    if isinstance(g, tuple):
        g = g[0]
    if isinstance(g, WeightedGraph):
        g = g.graph
    return g


def format_coloring(coloring: EdgeColoring) -> str:
    return "".join(f"{u} {v} {c}\n" for (u, v), c in coloring.assignment.items())


def parse_coloring(text: str) -> EdgeColoring:
    out = {}
    for k, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphParseError(f"expected 'u v color', got {line!r}", k)
        try:
            u, v, c = (int(p) for p in parts)
        except ValueError:
            raise GraphParseError(f"non-integer field in {line!r}", k) from None
        e = canon(u, v)
        if e in out:
            raise GraphParseError(f"edge {e} colored twice", k)
        out[e] = c
    return EdgeColoring(out)


def verify_serialized(graph_text: str, coloring_text: str, bound: int | None = None) -> dict:
    """Validator verdicts computed from the two text artifacts alone."""
    graph, _ = parse_edge_list(graph_text)
    coloring = parse_coloring(coloring_text)
    proper = validate(coloring, "proper_coloring", graph=graph)
    classes = [validate(edges, "matching") for edges in coloring.classes().values()]
    bad_class = next((v for v in classes if not v), None)
    out = {
        "proper_coloring": proper.as_dict(),
        "color_classes_are_matchings": (bad_class or validate([], "matching")).as_dict(),
        "colors_used": coloring.palette_count,
    }
    if bound is not None:
        out["within_bound"] = {"ok": coloring.palette_count <= bound, "bound": bound}
    return out


def _bounds_and_headline(cfg: RunConfig, ctx: RunContext, delta: int, n: int) -> tuple[dict, float | None, str | None]:
    logn = ctx.log_n
    a = cfg.algorithm
    if a == "greedy-baseline":
        return {"colors_bound": max(2 * delta - 1, 0), "rule": "2*Delta-1", "active": True}, None, None
    if a == "threehalves":
        return (
            {"colors_bound": three_halves_budget(delta), "rule": "3*Delta/2", "active": True},
            three_halves_headline(delta, n),
            "Delta^2*log n*M(Delta log n, Delta^(Delta log n))",
        )
    if a == "eps":
        pre = 360 / float(cfg.eps) * math.log2(1 / float(cfg.eps)) * logn
        return (
            {
                "colors_bound": math.floor((1 + cfg.eps) * delta),
                "rule": "(1+eps)*Delta",
                "active": delta >= pre,
                "precondition_delta": pre,
            },
            eps_headline(delta, cfg.eps, n),
            "Delta*(log n/eps^2 + M_W(eps/2))",
        )
    if a == "full":
        path = ctx.artifacts.get("full_path")
        if path == "three_halves":
            return (
                {"colors_bound": three_halves_budget(delta), "rule": "3*Delta/2 (below Delta')", "active": True},
                three_halves_headline(delta, n),
                "Delta^2*log n*M(Delta log n, Delta^(Delta log n))",
            )
        tree = ctx.artifacts["split_tree"]
        return (
            {
                "colors_bound": math.floor((1 + cfg.eps) * delta),
                "rule": "(1+eps)*Delta",
                "active": cfg.threshold is None,
                "split_depth": tree.h,
                "leaf_degree_bound": tree.degree_bounds[-1],
            },
            split_headline(tree.h, tree.gamma, tree.degree_bounds[-1], tree.eps2, n),
            "h*split(gamma) + Delta_leaf*(log n/eps2^2 + M_W(eps2/2))",
        )
    # tight
    path = ctx.artifacts["tight_path"]
    ref = ctx.artifacts["overhead_reference"]
    bounds = {
        "overhead": ctx.artifacts["overhead"],
        "overhead_reference": ref,
        "path": path,
        "tight_eps": ctx.artifacts["tight_eps"],
    }
    if path == "eps":
        bounds.update(colors_bound=math.floor(delta + ref), rule="Delta + c*log n*log(2+Delta/log n)", active=True)
        return bounds, eps_headline(delta, ctx.artifacts["tight_eps"], n), "Delta*(log n/eps^2 + M_W(eps/2))"
    bounds.update(colors_bound=three_halves_budget(delta), rule="3*Delta/2", active=True)
    if ctx.artifacts.get("full_path") == "split":
        tree = ctx.artifacts["split_tree"]
        return (
            bounds,
            split_headline(tree.h, tree.gamma, tree.degree_bounds[-1], tree.eps2, n),
            "h*split(gamma) + Delta_leaf*(log n/eps2^2 + M_W(eps2/2))",
        )
    return bounds, three_halves_headline(delta, n), "Delta^2*log n*M(Delta log n, Delta^(Delta log n))"


def _summarize_checks(ctx: RunContext) -> dict:
    by_name: dict[str, dict[str, int]] = {}
    for c in ctx.checks:
        slot = by_name.setdefault(c.name, {"pass": 0, "fail": 0, "informational": 0})
        slot[c.status] += 1
    return {
        "summary": {k: by_name[k] for k in sorted(by_name)},
        "failures": [c.as_dict() for c in ctx.checks if c.status == "fail"],
        "informational": [c.as_dict() for c in ctx.checks if c.status == "informational" and not c.holds],
    }


def run(config: RunConfig) -> RunResult:
    """Execute one configuration.

    Guarantees are always collected in report mode so a JSON result exists
    even when one fails; ``ok`` is false when a validator fails or, in hard
    mode, when an active guarantee fails.
    """
    graph = load_graph(config)
    delta = config.delta if config.delta is not None else graph.max_degree
    if delta < graph.max_degree:
        raise UsageError(f"declared Delta {delta} is below the measured maximum degree {graph.max_degree}")
    ctx = RunContext(n=graph.n, mode="report")
    start = time.perf_counter()
    a = config.algorithm
    if a == "eps":
        coloring = eps_edge_coloring(graph, delta, config.eps, ctx=ctx)
    elif a == "threehalves":
        coloring = three_halves_coloring(graph, delta, ctx=ctx)
    elif a == "full":
        coloring = full_coloring(graph, delta, config.eps, threshold=config.threshold, ctx=ctx)
    elif a == "tight":
        coloring = tight_palette_coloring(graph, delta, ctx=ctx)
    else:
        coloring = greedy_coloring(graph, ctx=ctx)
    wall_ms = round((time.perf_counter() - start) * 1000, 3)

    bounds, headline, headline_name = _bounds_and_headline(config, ctx, delta, graph.n)
    graph_text = format_edge_list(graph)
    coloring_text = format_coloring(coloring)
    serialized = verify_serialized(graph_text, coloring_text, bounds["colors_bound"] if bounds.get("active") else None)
    guarantees = _summarize_checks(ctx)
    verdicts = {**serialized, "guarantees": guarantees}
    ok = serialized["proper_coloring"]["ok"] and serialized["color_classes_are_matchings"]["ok"]
    if config.mode == "hard":
        ok = ok and not guarantees["failures"] and serialized.get("within_bound", {"ok": True})["ok"]
    verdicts["ok"] = ok

    if config.out:
        Path(config.out).write_text(coloring_text)
    result = RunResult(
        config,
        graph,
        coloring,
        graph.n,
        delta,
        graph.max_degree,
        coloring.palette_count,
        bounds,
        report(ctx.ledger, headline, headline_name),
        verdicts,
        wall_ms,
        ok,
        ctx.artifacts,
    )
    if config.result:
        Path(config.result).write_text(result.to_json())
    return result


CSV_COLUMNS = ("algorithm", "colors_used", "colors_bound", "ledger_total", "time")


def compare(results: list[RunResult]) -> str:
    """CSV table, one row per result, columns in a fixed order."""
    sources = {r.config.source for r in results}
    if len(sources) > 1:
        raise UsageError(f"results cover different inputs: {', '.join(sorted(sources))}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in results:
        w.writerow([r.config.algorithm, r.colors_used, r.bounds["colors_bound"], r.ledger["total"], r.wall_ms])
    return buf.getvalue()
