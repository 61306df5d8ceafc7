"""Edge-coloring drivers.

``eps_edge_coloring`` peels off pervasive matchings phase by phase and
finishes with greedy maximal matchings; ``three_halves_coloring`` extracts
(3)-graphs and 3-colors each one; ``full_coloring`` splits high-degree
graphs into low-degree parts first; ``tight_palette_coloring`` picks the
parameters for a small additive overhead.

Every driver runs on any input.  Guarantees that depend on a degree
precondition are asserted only when that precondition holds; otherwise they
are recorded as informational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import GuaranteeError, PreconditionError
from .graph import (
    Edge,
    EdgeColoring,
    Graph,
    Matching,
    canon,
    log2n,
    split_discrepancies,
    validate,
)
from .ledger import RoundLedger
from .matching import bipartite_max_matching, greedy_maximal_matching, pervasive_matching

C = 360
E = math.e


# ---------------------------------------------------------------------------
# run bookkeeping


@dataclass
class GuaranteeCheck:
    name: str
    status: str  # "pass" | "fail" | "informational"
    holds: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "holds": self.holds, "detail": self.detail}


@dataclass
class RunContext:
    """State shared by one top-level call: ledger, guarantee log, global ``n``.

    In ``hard`` mode an active guarantee that fails raises
    :class:`GuaranteeError`; in ``report`` mode it is only recorded.
    """

    n: int | None = None
    mode: str = "hard"
    ledger: RoundLedger = field(default_factory=RoundLedger)
    checks: list[GuaranteeCheck] = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    @property
    def log_n(self) -> float:
        return log2n(self.n or 2)

    def check(self, name: str, holds: bool, *, active: bool = True, detail: str = "") -> bool:
        status = "informational" if not active else ("pass" if holds else "fail")
        self.checks.append(GuaranteeCheck(name, status, bool(holds), detail))
        if active and not holds and self.mode == "hard":
            raise GuaranteeError(f"{name}: {detail}")
        return holds

    def fork(self) -> "RunContext":
        return RunContext(self.n, self.mode)

    def join(self, subs: list["RunContext"]) -> None:
        self.ledger.parallel([s.ledger for s in subs])
        for s in subs:
            self.checks.extend(s.checks)

    @property
    def failed(self) -> list[GuaranteeCheck]:
        return [c for c in self.checks if c.status == "fail"]


def _ctx(ctx: RunContext | None, graph: Graph) -> RunContext:
    if ctx is None:
        ctx = RunContext()
    if ctx.n is None:
        ctx.n = graph.n
    return ctx


def _delta(graph: Graph, delta: int | None) -> int:
    if delta is None:
        return graph.max_degree
    if delta < graph.max_degree:
        raise PreconditionError(f"declared degree bound {delta} is below the maximum degree {graph.max_degree}")
    return delta


def _from_classes(classes: list[Matching], base: int = 0) -> EdgeColoring:
    return EdgeColoring({e: base + i for i, m in enumerate(classes) for e in m.edges})


# ---------------------------------------------------------------------------
# the (1 + eps) Delta algorithm


@dataclass(frozen=True)
class PhaseSchedule:
    """Phase parameters for a target ``eps`` on ``n``-node inputs."""

    eps: Fraction
    n: int

    @property
    def log_n(self) -> float:
        return log2n(self.n)

    @property
    def eps_prime(self) -> Fraction:
        return Fraction(self.eps) / 120

    @property
    def last(self) -> int:
        """``l``: the smallest index with ``eps_{l+1} >= 1/(4e)``."""
        i = 0
        while float(self.phase_eps(i + 1)) * 4 * E < 1:
            i += 1
        return i

    def phase_eps(self, i: int) -> Fraction:
        return 2**i * self.eps_prime

    def threshold(self, i: int) -> float:
        return 2 * self.log_n / float(self.phase_eps(i))

    def steps(self, i: int) -> int:
        return phase_steps(self.phase_eps(i), self.n)

    @property
    def cleanup_colors(self) -> float:
        return 2 * self.threshold(self.last)


def phase_steps(eps, n: int) -> int:
    """``T = ceil(log n / (4 e eps))``."""
    return math.ceil(log2n(n) / (4 * E * float(eps)))


def census_bound(t: int, i: int, eps, n: int) -> Fraction:
    return math.comb(t, i) * (2 * Fraction(eps)) ** i * n


def degree_census(graph: Graph, delta: int, t: int) -> list[int]:
    """``K(t, i)`` for ``i = 0..t``: nodes of degree at least ``delta - t + i``."""
    degs = sorted(graph.degrees().values(), reverse=True)
    out = []
    for i in range(t + 1):
        floor = delta - t + i
        out.append(sum(1 for d in degs if d >= floor))
    return out


class PhaseResult(NamedTuple):
    coloring: EdgeColoring
    residual: Graph
    census: list[list[int]]


def reduce_degree_phase(
    graph: Graph,
    delta: int,
    eps,
    T: int | None = None,
    palette_base: int = 0,
    *,
    ctx: RunContext | None = None,
) -> PhaseResult:
    """Color up to ``T`` pervasive matchings, one color each.

    Step ``t`` asks for hits on every degree class from ``delta - t`` up.
    ``census[t]`` holds ``K(t, i)`` measured after step ``t``.
    """
    ctx = _ctx(ctx, graph)
    eps = Fraction(eps)
    delta = _delta(graph, delta)
    if T is None:
        T = phase_steps(eps, ctx.n)
    active = delta >= 2 * ctx.log_n / float(eps)
    residual = graph
    classes: list[Matching] = []
    census = [degree_census(graph, delta, 0)]
    for t in range(1, T + 1):
        if residual.m == 0:
            break
        m = pervasive_matching(residual, delta, min(t, max(delta - 1, 0)), eps)
        ctx.ledger.charge("pervasive_matching", t=T, eps=eps, delta=delta, n=ctx.n)
        classes.append(m)
        residual = residual.remove_edges(m.edges)
        census.append(degree_census(residual, delta, t))
    n = graph.n
    for t, row in enumerate(census):
        bad = [(i, k) for i, k in enumerate(row) if k > census_bound(t, i, eps, n)]
        ctx.check(
            "census",
            not bad,
            active=active,
            detail=f"step {t}: K(t,i) above bound at {bad}" if bad else f"step {t}",
        )
    ctx.check("phase_colors", len(classes) <= T, detail=f"{len(classes)} colors, T={T}")
    if len(classes) == T:
        limit = delta - (1 - 4 * E * float(eps)) * T
        ctx.check(
            "phase_degree_drop",
            residual.max_degree <= limit,
            active=active,
            detail=f"residual max degree {residual.max_degree}, bound {limit:.3f}",
        )
    return PhaseResult(_from_classes(classes, palette_base), residual, census)


def eps_edge_coloring(graph: Graph, delta: int | None = None, eps=Fraction(1, 2), *, ctx: RunContext | None = None) -> EdgeColoring:
    """Proper coloring with at most ``(1 + eps) * delta`` colors when
    ``delta >= 360 / eps * log(1/eps) * log n``.

    Phase ``i`` repeats the degree-reduction step at ``eps_i`` while the
    tracked degree bound is at least the phase threshold; the bound drops by
    ``ceil((1 - 4e eps_i) T_i)`` per application.  Whatever is left is
    colored by greedy maximal matchings.
    """
    ctx = _ctx(ctx, graph)
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise PreconditionError(f"eps must lie in (0, 1), got {eps}")
    delta = _delta(graph, delta)
    sched = PhaseSchedule(eps, ctx.n)
    bound = delta
    residual = graph
    assignment: dict[Edge, int] = {}
    used = 0
    for i in range(sched.last + 1):
        eps_i, T_i, thr = sched.phase_eps(i), sched.steps(i), sched.threshold(i)
        drop = math.ceil((1 - 4 * E * float(eps_i)) * T_i)
        while bound >= thr and residual.m:
            res = reduce_degree_phase(residual, max(bound, residual.max_degree), eps_i, T_i, used, ctx=ctx)
            assignment.update(res.coloring.assignment)
            used += res.coloring.palette_count
            residual = res.residual
            bound -= drop
            ctx.check(
                "tracked_degree_bound",
                residual.max_degree <= bound,
                detail=f"phase {i}: measured {residual.max_degree}, tracked {bound}",
            )
    cleanup_from = residual.max_degree
    rounds = 0
    while residual.m:
        m = greedy_maximal_matching(residual)
        ctx.ledger.charge("maximal_matching", n=ctx.n)
        for e in m.edges:
            assignment[e] = used
        used += 1
        rounds += 1
        residual = residual.remove_edges(m.edges)
    ctx.check(
        "cleanup_colors",
        rounds <= max(2 * cleanup_from - 1, 0) and rounds <= max(2 * sched.threshold(sched.last) - 1, 0),
        detail=f"{rounds} cleanup colors from residual degree {cleanup_from}",
    )
    coloring = EdgeColoring(assignment).compacted()
    _check_proper(ctx, coloring, graph)
    precondition = delta >= C / float(eps) * math.log2(1 / float(eps)) * ctx.log_n
    ctx.check(
        "eps_color_bound",
        coloring.palette_count <= (1 + eps) * delta,
        active=precondition,
        detail=f"{coloring.palette_count} colors vs (1+eps)*Delta = {float((1 + eps) * delta):.2f}",
    )
    return coloring


def _check_proper(ctx: RunContext, coloring: EdgeColoring, graph: Graph) -> None:
    v = validate(coloring, "proper_coloring", graph=graph)
    ctx.check("proper", v.ok, detail=v.detail)


# ---------------------------------------------------------------------------
# degree splitting and the recursive driver


class SplitResult(NamedTuple):
    a: Graph
    b: Graph
    discrepancy: dict[int, int]

    @property
    def max_discrepancy(self) -> int:
        return max(self.discrepancy.values(), default=0)


VIRTUAL = -1


def degree_split(graph: Graph, gamma, *, ctx: RunContext | None = None) -> SplitResult:
    """Split the edges in two so every node's degrees differ by at most 2.

    A virtual node is joined to every odd-degree node; each Euler circuit of
    the result is walked with edges assigned alternately, and the virtual
    edges are then dropped.  ``gamma`` only enters the round price.
    """
    ctx = _ctx(ctx, graph)
    edges: list[Edge] = list(graph.edges)
    odd = [v for v in graph.sorted_nodes if graph.degree(v) % 2]
    edges += [(VIRTUAL, v) for v in odd]
    adj: dict[int, list[tuple[int, int]]] = {}
    for eid, (u, v) in enumerate(edges):
        adj.setdefault(u, []).append((v, eid))
        adj.setdefault(v, []).append((u, eid))
    for v in adj:
        adj[v].sort()
    used = [False] * len(edges)
    ptr = dict.fromkeys(adj, 0)
    side = [0] * len(edges)
    starts = ([VIRTUAL] if odd else []) + [v for v in graph.sorted_nodes if v in adj]
    for s in starts:
        stack: list[tuple[int, int | None]] = [(s, None)]
        circuit: list[int] = []
        while stack:
            v, via = stack[-1]
            nbrs = adj[v]
            while ptr[v] < len(nbrs) and used[nbrs[ptr[v]][1]]:
                ptr[v] += 1
            if ptr[v] < len(nbrs):
                w, eid = nbrs[ptr[v]]
                used[eid] = True
                stack.append((w, eid))
            else:
                stack.pop()
                if via is not None:
                    circuit.append(via)
        for k, eid in enumerate(reversed(circuit)):
            side[eid] = k % 2
    real = graph.m
    a = [edges[k] for k in range(real) if side[k] == 0]
    b = [edges[k] for k in range(real) if side[k] == 1]
    disc = split_discrepancies(a, b)
    disc = {v: disc.get(v, 0) for v in graph.sorted_nodes}
    ctx.ledger.charge("degree_split", gamma=Fraction(gamma), n=ctx.n)
    ctx.check("split_discrepancy", max(disc.values(), default=0) <= 2, detail="per-node discrepancy at most 2")
    return SplitResult(Graph(graph.nodes, a, check=False), Graph(graph.nodes, b, check=False), disc)


@dataclass
class SplitTree:
    """Levels of edge-disjoint parts; ``levels[0]`` is the input graph."""

    h: int
    gamma: Fraction
    eps1: Fraction
    eps2: Fraction
    delta_prime: float
    levels: list[list[Graph]]
    degree_bounds: list[int]
    offsets: list[int] = field(default_factory=list)
    palettes: list[range] = field(default_factory=list)

    @property
    def leaves(self) -> list[Graph]:
        return self.levels[-1]


def full_threshold(eps, n: int) -> float:
    """``Delta' = 360 / eps * log(1/eps) * log n``."""
    eps = float(eps)
    return C / eps * math.log2(1 / eps) * log2n(n)


def split_depth(delta: int, delta_prime: float, gamma) -> int:
    """Largest ``h`` with ``(1/2 + gamma)^h >= delta_prime / delta``.

    Stops early once another split would no longer lower the degree bound.
    """
    if delta <= 0:
        return 0
    ratio = float(delta_prime) / delta
    base = 0.5 + float(gamma)
    h, d = 0, delta
    while base ** (h + 1) >= ratio and math.ceil(d / 2) + 1 < d:
        h += 1
        d = math.ceil(d / 2) + 1
    return h


def build_split_tree(graph: Graph, delta: int, eps, threshold: float | None = None, *, ctx: RunContext | None = None) -> SplitTree:
    ctx = _ctx(ctx, graph)
    eps = Fraction(eps)
    eps1, eps2 = eps / 8, eps / 4
    gamma = eps1 / (20 * Fraction(math.log2(max(delta, 2))))
    dprime = full_threshold(eps, ctx.n) if threshold is None else float(threshold)
    h = split_depth(delta, dprime, gamma)
    levels = [[graph]]
    bounds = [delta]
    for _ in range(h):
        nxt = []
        subs = []
        for part in levels[-1]:
            sub = ctx.fork()
            s = degree_split(part, gamma, ctx=sub)
            subs.append(sub)
            nxt.extend([s.a, s.b])
        ctx.join(subs)
        levels.append(nxt)
        bounds.append(math.ceil(bounds[-1] / 2) + 1)
    return SplitTree(h, gamma, eps1, eps2, dprime, levels, bounds)


def full_coloring(
    graph: Graph,
    delta: int | None = None,
    eps=Fraction(1, 2),
    *,
    threshold: float | None = None,
    ctx: RunContext | None = None,
) -> EdgeColoring:
    """``(1 + eps) * delta`` colors for large ``delta``, else the 3/2 algorithm.

    ``threshold`` overrides ``Delta'`` so small graphs can exercise the
    splitting path; the color bound is then informational.
    """
    ctx = _ctx(ctx, graph)
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise PreconditionError(f"eps must lie in (0, 1), got {eps}")
    delta = _delta(graph, delta)
    natural = full_threshold(eps, ctx.n)
    dprime = natural if threshold is None else float(threshold)
    if delta < dprime:
        ctx.artifacts["full_path"] = "three_halves"
        return three_halves_coloring(graph, delta, ctx=ctx)
    ctx.artifacts["full_path"] = "split"
    tree = build_split_tree(graph, delta, eps, dprime, ctx=ctx)
    leaf_bound = tree.degree_bounds[-1]
    subs = []
    assignment: dict[Edge, int] = {}
    offset = 0
    for leaf in tree.leaves:
        sub = ctx.fork()
        leaf_coloring = eps_edge_coloring(leaf, max(leaf_bound, leaf.max_degree), tree.eps2, ctx=sub).compacted()
        subs.append(sub)
        tree.offsets.append(offset)
        tree.palettes.append(range(offset, offset + leaf_coloring.palette_count))
        for e, c in leaf_coloring.assignment.items():
            assignment[e] = offset + c
        offset += leaf_coloring.palette_count
    ctx.join(subs)
    ctx.artifacts["split_tree"] = tree
    coloring = EdgeColoring(assignment)
    _check_proper(ctx, coloring, graph)
    ctx.check(
        "full_color_bound",
        coloring.palette_count <= (1 + eps) * delta,
        active=threshold is None,
        detail=f"{coloring.palette_count} colors vs (1+eps)*Delta = {float((1 + eps) * delta):.2f}",
    )
    return coloring


def tight_palette_coloring(graph: Graph, delta: int | None = None, *, ctx: RunContext | None = None) -> EdgeColoring:
    """``Delta + O(log n * log(2 + Delta / log n))`` colors.

    Small degrees go to :func:`full_coloring` at ``eps = 1/2``; otherwise
    ``eps = 360 * log n * log(2 + Delta/log n) / Delta``.  When that ``eps``
    is not below 1/2 the 3/2 algorithm is already at least as good.
    """
    ctx = _ctx(ctx, graph)
    delta = _delta(graph, delta)
    logn = ctx.log_n
    target = C * logn * math.log2(2 + delta / logn)
    if delta <= C * logn:
        ctx.artifacts["tight_path"] = "full"
        ctx.artifacts["tight_eps"] = Fraction(1, 2)
        coloring = full_coloring(graph, delta, Fraction(1, 2), ctx=ctx)
    else:
        eps = Fraction(target / delta).limit_denominator(10**6)
        ctx.artifacts["tight_eps"] = eps
        if eps >= Fraction(1, 2):
            ctx.artifacts["tight_path"] = "three_halves"
            coloring = three_halves_coloring(graph, delta, ctx=ctx)
        else:
            ctx.artifacts["tight_path"] = "eps"
            coloring = eps_edge_coloring(graph, delta, eps, ctx=ctx)
    ctx.artifacts["overhead"] = coloring.palette_count - delta
    ctx.artifacts["overhead_reference"] = target
    return coloring


# ---------------------------------------------------------------------------
# the 3/2 algorithm


@dataclass
class ExtractionTrace:
    delta: int
    v_delta: frozenset[int]
    v1: frozenset[int]
    v2: frozenset[int]
    v3: frozenset[int]
    m1: Matching
    m2: Matching
    m3: Matching
    m4: Matching
    m_prime: Matching
    h: Graph
    residual: Graph

    @property
    def f(self) -> frozenset[Edge]:
        return self.h.edge_set


def _bipartite_step(g: Graph, side: frozenset[int]) -> Matching:
    if not side:
        return Matching()
    b_edges = [e for e in g.edges if (e[0] in side) != (e[1] in side)]
    b = Graph(g.nodes, b_edges, check=False)
    return bipartite_max_matching(b, side, g.nodes - side)


def extract_3graph(graph: Graph, delta: int | None = None, *, ctx: RunContext | None = None) -> ExtractionTrace:
    """Pull out a (3)-graph ``H`` so that ``G - H`` has max degree at most ``delta - 2``."""
    ctx = _ctx(ctx, graph)
    delta = _delta(graph, delta)
    if delta < 3:
        raise PreconditionError(f"extraction needs Delta >= 3, got {delta}")
    v_delta = frozenset(v for v in graph.nodes if graph.degree(v) == delta)
    m1 = greedy_maximal_matching(graph.induced(v_delta))
    g1 = graph.remove_edges(m1.edges)
    v1 = frozenset(v for v in graph.nodes if g1.degree(v) == delta)
    m2 = _bipartite_step(g1, v1)
    g2 = g1.remove_edges(m2.edges)
    v2 = frozenset(v for v in graph.nodes if g2.degree(v) == delta - 1)
    m3 = greedy_maximal_matching(g2.induced(v2))
    g3 = g2.remove_edges(m3.edges)
    v3 = frozenset(v for v in graph.nodes if g3.degree(v) == delta - 1)
    m4 = _bipartite_step(g3, v3)
    h_prime = Graph(graph.nodes, [*m1.edges, *m2.edges, *m3.edges, *m4.edges], check=False)
    deg3 = [v for v in h_prime.nodes if h_prime.degree(v) == 3]
    m_prime = greedy_maximal_matching(h_prime.induced(deg3))
    h = h_prime.remove_edges(m_prime.edges)
    residual = graph.remove_edges(h.edges)
    ctx.ledger.charge("extraction", delta=delta, n=ctx.n)
    return ExtractionTrace(delta, v_delta, v1, v2, v3, m1, m2, m3, m4, m_prime, h, residual)


def extraction_violations(graph: Graph, trace: ExtractionTrace) -> list[str]:
    """Direct checks of the extraction guarantees; empty when all hold."""
    out = []
    v = validate(trace.h, "three_graph")
    if not v:
        out.append(f"H is not a (3)-graph: {v.detail}")
    for x in graph.nodes:
        d, dh = graph.degree(x), trace.h.degree(x)
        if d == trace.delta and dh < 2:
            out.append(f"degree-Delta node {x} has H-degree {dh}")
        if d == trace.delta - 1 and dh < 1:
            out.append(f"degree-(Delta-1) node {x} has H-degree {dh}")
    if trace.residual.max_degree > trace.delta - 2:
        out.append(f"residual max degree {trace.residual.max_degree} > {trace.delta - 2}")
    return out


def color_3graph(h: Graph) -> EdgeColoring:
    """Three colors for a (3)-graph, by Misra-Gries fan rotation.

    The fan center is always a degree-3 endpoint, whose neighbours all have
    degree at most 2, so every node the argument needs has a free color.
    """
    v = validate(h, "three_graph")
    if not v:
        raise PreconditionError(f"not a (3)-graph: {v.detail} (witness {v.witness})")
    palette = (0, 1, 2)
    color: dict[Edge, int] = {}
    at: dict[int, dict[int, int]] = {x: {} for x in h.nodes}

    def free(x):
        return [c for c in palette if c not in at[x]]

    def paint(x, y, c):
        color[canon(x, y)] = c
        at[x][c] = y
        at[y][c] = x

    def scrape(x, y):
        c = color.pop(canon(x, y))
        del at[x][c]
        del at[y][c]
        return c

    for u, w in h.edges:
        common = [c for c in free(u) if c in free(w)]
        if common:
            paint(u, w, common[0])
            continue
        x, y = (u, w) if h.degree(u) == 3 else (w, u)
        fan = [y]
        while True:
            nxt = next((at[x][c] for c in free(fan[-1]) if c in at[x] and at[x][c] not in fan), None)
            if nxt is None:
                break
            fan.append(nxt)
        c = free(x)[0]
        d = free(fan[-1])[0]
        if c != d and d in at[x]:
            # swap the c/d alternating path leaving x along its d edge
            path, cur, want = [], x, d
            while want in at[cur]:
                nxt = at[cur][want]
                path.append((cur, nxt))
                cur, want = nxt, (c if want == d else d)
            old = [scrape(a, b) for a, b in path]
            for (a, b), col in zip(path, old):
                paint(a, b, c if col == d else d)
        idx = None
        for k, f in enumerate(fan):
            if d in free(f) and all(
                color.get(canon(x, fan[j + 1])) in free(fan[j]) for j in range(k)
            ):
                idx = k
                break
        if idx is None:
            raise GuaranteeError(f"fan rotation failed at edge {(u, w)}")
        for j in range(idx):
            cj = scrape(x, fan[j + 1])
            paint(x, fan[j], cj)
        paint(x, fan[idx], d)
    return EdgeColoring(color)


def color_degree_le2(graph: Graph) -> EdgeColoring:
    """Paths and even cycles get colors 0/1; an odd cycle's closing edge gets 2."""
    if graph.max_degree > 2:
        raise PreconditionError(f"max degree {graph.max_degree} > 2")
    color: dict[Edge, int] = {}
    seen: set[int] = set()

    def walk(start, first):
        prev, cur, k = start, first, 0
        color[canon(start, first)] = 0
        seen.add(start)
        while True:
            seen.add(cur)
            k += 1
            nxt = [y for y in graph.neighbors(cur) if y != prev]
            if not nxt:
                return
            y = nxt[0]
            e = canon(cur, y)
            if e in color:
                return
            if y == start:
                color[e] = 2 if k % 2 == 0 else 1
                return
            color[e] = k % 2
            prev, cur = cur, y

    for v in graph.sorted_nodes:
        if v not in seen and graph.degree(v) == 1:
            walk(v, graph.neighbors(v)[0])
    for v in graph.sorted_nodes:
        if v not in seen and graph.degree(v) == 2:
            walk(v, min(graph.neighbors(v)))
    return EdgeColoring(color)


def three_halves_budget(delta: int) -> int:
    """``floor(3D/2)`` for even ``D`` and ``ceil(3D/2)`` for odd ``D``."""
    return 3 * delta // 2 if delta % 2 == 0 else (3 * delta + 1) // 2


def three_halves_coloring(
    graph: Graph,
    delta: int | None = None,
    *,
    ctx: RunContext | None = None,
    traces: list[ExtractionTrace] | None = None,
) -> EdgeColoring:
    """At most ``3 * delta / 2`` colors (rounded up for odd ``delta``), always."""
    ctx = _ctx(ctx, graph)
    delta = _delta(graph, delta)
    k = (delta - 1) // 2 if delta >= 3 else 0
    residual = graph
    assignment: dict[Edge, int] = {}
    offset = 0
    for i in range(k):
        tr = extract_3graph(residual, delta - 2 * i, ctx=ctx)
        if traces is not None:
            traces.append(tr)
        part = color_3graph(tr.h)
        ctx.ledger.charge("three_graph_coloring", n=ctx.n)
        for e, c in part.assignment.items():
            assignment[e] = offset + c
        offset += 3
        residual = tr.residual
    last = color_degree_le2(residual)
    if residual.max_degree <= 1:
        ctx.ledger.charge("one_round")
    else:
        ctx.ledger.charge("cole_vishkin", n=ctx.n)
    for e, c in last.assignment.items():
        assignment[e] = offset + c
    coloring = EdgeColoring(assignment).compacted()
    _check_proper(ctx, coloring, graph)
    budget = three_halves_budget(delta)
    ctx.check(
        "three_halves_bound",
        coloring.palette_count <= budget,
        detail=f"{coloring.palette_count} colors, budget {budget}",
    )
    return coloring


# ---------------------------------------------------------------------------
# sequential baseline


def greedy_coloring(graph: Graph, *, ctx: RunContext | None = None) -> EdgeColoring:
    """Canonical-order greedy: each edge takes the least color free at both ends."""
    ctx = _ctx(ctx, graph)
    at: dict[int, set[int]] = {v: set() for v in graph.nodes}
    color: dict[Edge, int] = {}
    for u, v in graph.edges:
        c = 0
        while c in at[u] or c in at[v]:
            c += 1
        color[(u, v)] = c
        at[u].add(c)
        at[v].add(c)
    coloring = EdgeColoring(color)
    _check_proper(ctx, coloring, graph)
    bound = max(2 * graph.max_degree - 1, 0)
    ctx.check("greedy_bound", coloring.palette_count <= bound, detail=f"{coloring.palette_count} colors, 2*Delta-1 = {bound}")
    return coloring
