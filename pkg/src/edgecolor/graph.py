"""Graph, matching and coloring value types plus the validators.

Everything here is immutable after construction.  Node ids are non-negative
integers and edges are canonical ``(min, max)`` tuples; every iteration order
in the package is derived from sorting those tuples, which keeps all
algorithms bit-deterministic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import GraphParseError, PreconditionError, UsageError

Edge = tuple[int, int]


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph with a fixed node set.

    Nodes that lose all their edges (e.g. in a residual graph) stay in the
    node set, so ``n`` is stable across edge removals.
    """

    def __init__(self, nodes: Iterable[int], edges: Iterable[Edge], *, check: bool = True):
        node_set = frozenset(nodes)
        adj: dict[int, list[int]] = {v: [] for v in node_set}
        canonical = []
        seen = set()
        for u, v in edges:
            e = canon(u, v)
            if check:
                if u == v:
                    raise PreconditionError(f"self-loop at node {u}")
                if e in seen:
                    raise PreconditionError(f"duplicate edge {e}")
                if u not in adj or v not in adj:
                    raise PreconditionError(f"edge {e} has an endpoint outside the node set")
                seen.add(e)
            canonical.append(e)
            adj[e[0]].append(e[1])
            adj[e[1]].append(e[0])
        canonical.sort()
        self.nodes: frozenset[int] = node_set
        self.edges: tuple[Edge, ...] = tuple(canonical)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @classmethod
    def from_edges(cls, edges: Iterable[Edge]) -> "Graph":
        edges = list(edges)
        nodes = {x for e in edges for x in e}
        return cls(nodes, edges)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.nodes == other.nodes and self.edges == other.edges

    def __hash__(self):
        return hash((self.nodes, self.edges))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def sorted_nodes(self) -> tuple[int, ...]:
        return tuple(sorted(self.nodes))

    @cached_property
    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> dict[int, int]:
        return {v: len(ns) for v, ns in self._adj.items()}

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return canon(u, v) in self.edge_set

    def incident_edges(self, v: int) -> list[Edge]:
        return [canon(v, u) for u in self._adj[v]]

    def remove_edges(self, edges: Iterable[Edge]) -> "Graph":
        drop = {canon(*e) for e in edges}
        return Graph(self.nodes, (e for e in self.edges if e not in drop), check=False)

    def with_edges(self, edges: Iterable[Edge]) -> "Graph":
        """Graph on the same node set containing only ``edges``."""
        return Graph(self.nodes, {canon(*e) for e in edges}, check=False)

    def induced(self, nodes: Iterable[int]) -> "Graph":
        keep = frozenset(nodes)
        return Graph(keep, (e for e in self.edges if e[0] in keep and e[1] in keep), check=False)

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted node tuples, ordered by smallest node."""
        seen: set[int] = set()
        out = []
        for s in self.sorted_nodes:
            if s in seen:
                continue
            seen.add(s)
            stack = [s]
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self._adj[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            out.append(tuple(sorted(comp)))
        return out

    def bfs_distances(self, source: int) -> dict[int, int]:
        dist = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for v in frontier:
                d = dist[v] + 1
                for u in self._adj[v]:
                    if u not in dist:
                        dist[u] = d
                        nxt.append(u)
            frontier = nxt
        return dist


class Matching:
    """A set of pairwise node-disjoint edges."""

    def __init__(self, edges: Iterable[Edge] = ()):
        mate: dict[int, int] = {}
        canonical = set()
        for u, v in edges:
            e = canon(u, v)
            if e in canonical:
                continue
            if u in mate or v in mate:
                node = u if u in mate else v
                raise PreconditionError(f"not a matching: node {node} is covered twice")
            mate[u] = v
            mate[v] = u
            canonical.add(e)
        self.edges: frozenset[Edge] = frozenset(canonical)
        self._mate = mate

    def __repr__(self):
        return f"Matching({sorted(self.edges)})"

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(sorted(self.edges))

    def __contains__(self, e):
        return canon(*e) in self.edges

    def __eq__(self, other):
        return isinstance(other, Matching) and self.edges == other.edges

    def __hash__(self):
        return hash(self.edges)

    @property
    def matched_nodes(self) -> frozenset[int]:
        return frozenset(self._mate)

    def mate(self, v: int) -> int | None:
        return self._mate.get(v)

    def covers(self, v: int) -> bool:
        return v in self._mate

    def hits(self, nodes: Iterable[int]) -> set[int]:
        return {v for v in nodes if v in self._mate}

    def weight(self, w: Mapping[Edge, Fraction]) -> Fraction:
        return sum((w[e] for e in self.edges), Fraction(0))


class EdgeColoring:
    """Partial map edge -> non-negative color index."""

    def __init__(self, assignment: Mapping[Edge, int] | Iterable[tuple[Edge, int]] = ()):
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        data = {}
        for e, c in items:
            if c < 0:
                raise PreconditionError(f"negative color {c} on edge {e}")
            data[canon(*e)] = int(c)
        self.assignment = MappingProxyType(dict(sorted(data.items())))

    def __repr__(self):
        return f"EdgeColoring(edges={len(self.assignment)}, colors={self.palette_count})"

    def __len__(self):
        return len(self.assignment)

    def __eq__(self, other):
        return isinstance(other, EdgeColoring) and dict(self.assignment) == dict(other.assignment)

    def __getitem__(self, e: Edge) -> int:
        return self.assignment[canon(*e)]

    def get(self, e: Edge, default=None):
        return self.assignment.get(canon(*e), default)

    @cached_property
    def colors(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.assignment.values())))

    @property
    def palette_count(self) -> int:
        return len(self.colors)

    def classes(self) -> dict[int, list[Edge]]:
        out: dict[int, list[Edge]] = {}
        for e, c in self.assignment.items():
            out.setdefault(c, []).append(e)
        return dict(sorted(out.items()))

    def shifted(self, offset: int) -> "EdgeColoring":
        return EdgeColoring({e: c + offset for e, c in self.assignment.items()})

    def compacted(self) -> "EdgeColoring":
        """Relabel used colors to ``0..k-1`` preserving their order."""
        relabel = {c: i for i, c in enumerate(self.colors)}
        return EdgeColoring({e: relabel[c] for e, c in self.assignment.items()})

    def merged(self, other: "EdgeColoring") -> "EdgeColoring":
        clash = set(self.assignment) & set(other.assignment)
        if clash:
            raise PreconditionError(f"colorings overlap on edge {min(clash)}")
        return EdgeColoring({**self.assignment, **other.assignment})


class WeightedGraph:
    """A graph with strictly positive exact-rational edge weights."""

    # ratio above n**RATIO_EXPONENT triggers a warning: rank count stops being O(log n)
    RATIO_EXPONENT = 4

    def __init__(self, graph: Graph, weights: Mapping[Edge, object]):
        w = {}
        for e in graph.edges:
            if e not in weights and (e[1], e[0]) not in weights:
                raise PreconditionError(f"missing weight for edge {e}")
            raw = weights[e] if e in weights else weights[(e[1], e[0])]
            x = Fraction(raw)
            if x <= 0:
                raise PreconditionError(f"nonpositive weight {x} on edge {e}")
            w[e] = x
        self.graph = graph
        self.w: Mapping[Edge, Fraction] = MappingProxyType(w)
        self.wmin = min(w.values(), default=Fraction(1))
        self.wmax = max(w.values(), default=Fraction(1))
        n = max(graph.n, 2)
        if self.wmax / self.wmin > n**self.RATIO_EXPONENT:
            warnings.warn(
                f"weight ratio {float(self.wmax / self.wmin):.3g} is not polynomial in n={graph.n}",
                stacklevel=2,
            )

    def __repr__(self):
        return f"WeightedGraph(n={self.graph.n}, m={self.graph.m}, wmin={self.wmin}, wmax={self.wmax})"

    def weight(self, edges: Iterable[Edge]) -> Fraction:
        return sum((self.w[canon(*e)] for e in edges), Fraction(0))

    def restrict(self, graph: Graph) -> "WeightedGraph":
        return WeightedGraph(graph, {e: self.w[e] for e in graph.edges})


@dataclass(frozen=True)
class DegreeClassPartition:
    """Disjoint node classes ``V_1..V_t`` with non-decreasing degree floors."""

    classes: tuple[frozenset[int], ...]
    min_degrees: tuple[int, ...]
    suffix_unions: tuple[frozenset[int], ...] = field(init=False)

    def __post_init__(self):
        if len(self.classes) != len(self.min_degrees):
            raise PreconditionError("one minimum degree per class is required")
        seen: set[int] = set()
        for cls in self.classes:
            if seen & cls:
                raise PreconditionError("degree classes must be pairwise disjoint")
            seen |= cls
        if any(a > b for a, b in zip(self.min_degrees, self.min_degrees[1:])):
            raise PreconditionError("minimum degrees must be non-decreasing")
        unions = []
        acc: frozenset[int] = frozenset()
        for cls in reversed(self.classes):
            acc = acc | cls
            unions.append(acc)
        object.__setattr__(self, "suffix_unions", tuple(reversed(unions)))

    @classmethod
    def by_exact_degree(cls, graph: Graph, degrees: Iterable[int]) -> "DegreeClassPartition":
        degrees = list(degrees)
        by_degree: dict[int, set[int]] = {}
        for v, d in graph.degrees().items():
            by_degree.setdefault(d, set()).add(v)
        return cls(tuple(frozenset(by_degree.get(d, ())) for d in degrees), tuple(degrees))

    def check(self, graph: Graph) -> None:
        for cls, delta in zip(self.classes, self.min_degrees):
            for v in cls:
                if graph.degree(v) < delta:
                    raise PreconditionError(f"node {v} has degree {graph.degree(v)} < {delta}")


# ---------------------------------------------------------------------------
# construction and parsing


def build_graph(edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from id pairs; errors name the 1-based pair index."""
    edges = []
    seen = set()
    for lineno, pair in enumerate(edge_list, start=1):
        try:
            u, v = pair
        except (TypeError, ValueError):
            raise GraphParseError(f"malformed pair {pair!r}", lineno) from None
        if not (isinstance(u, int) and isinstance(v, int)) or u < 0 or v < 0:
            raise GraphParseError(f"node ids must be non-negative integers, got {pair!r}", lineno)
        if u == v:
            raise GraphParseError(f"self-loop at node {u}", lineno)
        e = canon(u, v)
        if e in seen:
            raise GraphParseError(f"duplicate edge {e}", lineno)
        seen.add(e)
        edges.append(e)
    return Graph.from_edges(edges)


def parse_edge_list(text: str) -> tuple[Graph, dict[Edge, Fraction] | None]:
    """Parse the ``u v [w]`` edge-list format.

    Returns the graph and the weight map (``None`` when no line carries a
    weight).  Lines are either all weighted or all unweighted.
    """
    pairs = []
    weights: dict[Edge, Fraction] = {}
    weighted = None
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphParseError(f"expected 'u v' or 'u v w', got {raw.strip()!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"node ids must be integers, got {raw.strip()!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphParseError("node ids must be non-negative", lineno)
        if u == v:
            raise GraphParseError(f"self-loop at node {u}", lineno)
        e = canon(u, v)
        if e in seen:
            raise GraphParseError(f"duplicate edge {e}", lineno)
        seen.add(e)
        is_weighted = len(parts) == 3
        if weighted is None:
            weighted = is_weighted
        elif weighted != is_weighted:
            raise GraphParseError("mixed weighted and unweighted lines", lineno)
        if is_weighted:
            try:
                w = Fraction(parts[2])
            except (ValueError, ZeroDivisionError):
                raise GraphParseError(f"bad weight {parts[2]!r}", lineno) from None
            if w <= 0:
                raise GraphParseError(f"weight must be positive, got {parts[2]}", lineno)
            weights[e] = w
        pairs.append(e)
    return Graph.from_edges(pairs), (weights if weighted else None)


def format_fraction(x: Fraction) -> str:
    """Exact decimal when the denominator allows it, else ``p/q``."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = x * 10**digits
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def format_edge_list(graph: Graph, weights: Mapping[Edge, Fraction] | None = None) -> str:
    lines = []
    for u, v in graph.edges:
        if weights is None:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{u} {v} {format_fraction(weights[(u, v)])}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# queries


def nodes_with_degree_at_least(graph: Graph, delta: int) -> frozenset[int]:
    if delta < 0:
        raise PreconditionError("degree threshold must be non-negative")
    return frozenset(v for v, d in graph.degrees().items() if d >= delta)


@dataclass(frozen=True)
class AlternatingComponent:
    """One connected piece of the symmetric difference of two matchings.

    ``colors[i]`` is ``"blue"`` for an edge of ``M_b - M_a`` and ``"green"``
    for ``M_a - M_b``.  For paths, ``nodes`` runs from one endpoint to the
    other; for cycles the first node is not repeated at the end.
    """

    nodes: tuple[int, ...]
    edges: tuple[Edge, ...]
    colors: tuple[str, ...]
    is_cycle: bool

    def __len__(self):
        return len(self.edges)

    @property
    def endpoints(self) -> tuple[int, int] | None:
        if self.is_cycle:
            return None
        return self.nodes[0], self.nodes[-1]

    @property
    def endpoint_blue(self) -> tuple[bool, bool] | None:
        if self.is_cycle:
            return None
        return self.colors[0] == "blue", self.colors[-1] == "blue"

    def edges_of(self, color: str) -> list[Edge]:
        return [e for e, c in zip(self.edges, self.colors) if c == color]


def symmetric_difference_decompose(m_a: Matching, m_b: Matching) -> list[AlternatingComponent]:
    blue = m_b.edges - m_a.edges
    green = m_a.edges - m_b.edges
    inc: dict[int, list[tuple[int, Edge, str]]] = {}
    for color, es in (("blue", blue), ("green", green)):
        for e in es:
            u, v = e
            inc.setdefault(u, []).append((v, e, color))
            inc.setdefault(v, []).append((u, e, color))

    def walk(start: int, first: tuple[int, Edge, str]):
        nodes, edges, colors = [start], [], []
        prev_edge = None
        step = first
        while step is not None:
            nxt, e, c = step
            edges.append(e)
            colors.append(c)
            prev_edge = e
            if nxt == start:
                return nodes, edges, colors, True
            nodes.append(nxt)
            step = next((s for s in inc[nxt] if s[1] != prev_edge), None)
        return nodes, edges, colors, False

    out = []
    done: set[int] = set()
    # paths first, each started from its smaller endpoint
    for v in sorted(inc):
        if v in done or len(inc[v]) != 1:
            continue
        nodes, edges, colors, _ = walk(v, inc[v][0])
        done.update(nodes)
        out.append(AlternatingComponent(tuple(nodes), tuple(edges), tuple(colors), False))
    for v in sorted(inc):
        if v in done:
            continue
        first = min(inc[v], key=lambda s: s[0])
        nodes, edges, colors, cyc = walk(v, first)
        done.update(nodes)
        out.append(AlternatingComponent(tuple(nodes), tuple(edges), tuple(colors), cyc))
    out.sort(key=lambda c: min(c.nodes))
    return out


# ---------------------------------------------------------------------------
# validators


@dataclass(frozen=True)
class Verdict:
    ok: bool
    kind: str
    witness: object = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "kind": self.kind,
            "witness": _jsonable(self.witness),
            "detail": self.detail,
        }


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(y) for y in x)
    if isinstance(x, Fraction):
        return str(x)
    return x


VALIDATION_KINDS = ("matching", "maximal_matching", "proper_coloring", "three_graph", "split_discrepancy")


def validate(artifact, kind: str, *, graph: Graph | None = None, bound: float | None = None) -> Verdict:
    """Check one of the package's output guarantees.

    ``artifact`` is an edge collection (``matching``), a ``Matching``
    (``maximal_matching``, needs ``graph``), an ``EdgeColoring``
    (``proper_coloring``, optional ``graph``), a ``Graph`` (``three_graph``)
    or a pair ``(A, B)`` of graphs/edge sets (``split_discrepancy``, needs
    ``bound``; with ``graph`` it also checks that ``A`` and ``B`` partition
    its edges).
    """
    if kind == "matching":
        return _check_matching(artifact, kind)
    if kind == "maximal_matching":
        if graph is None:
            raise UsageError("maximal_matching validation needs the underlying graph")
        return _check_maximal(artifact, graph)
    if kind == "proper_coloring":
        return _check_coloring(artifact, graph)
    if kind == "three_graph":
        return _check_three_graph(artifact)
    if kind == "split_discrepancy":
        if bound is None:
            raise UsageError("split_discrepancy validation needs a bound")
        return _check_split(artifact, bound, graph)
    raise UsageError(f"unknown validation kind {kind!r}; expected one of {', '.join(VALIDATION_KINDS)}")


def _edges_of(artifact) -> list[Edge]:
    if isinstance(artifact, Matching):
        return sorted(artifact.edges)
    if isinstance(artifact, Graph):
        return list(artifact.edges)
    return sorted(canon(*e) for e in artifact)


def _check_matching(artifact, kind="matching") -> Verdict:
    owner: dict[int, Edge] = {}
    for e in _edges_of(artifact):
        for x in e:
            if x in owner:
                return Verdict(False, kind, (owner[x], e), f"edges {owner[x]} and {e} share node {x}")
            owner[x] = e
    return Verdict(True, kind)


def _check_maximal(artifact, graph: Graph) -> Verdict:
    base = _check_matching(artifact, "maximal_matching")
    if not base:
        return base
    edges = _edges_of(artifact)
    covered = {x for e in edges for x in e}
    for e in edges:
        if e not in graph.edge_set:
            return Verdict(False, "maximal_matching", e, f"edge {e} is not in the graph")
    for e in graph.edges:
        if e[0] not in covered and e[1] not in covered:
            return Verdict(False, "maximal_matching", e, f"edge {e} can be added")
    return Verdict(True, "maximal_matching")


def _check_coloring(coloring: EdgeColoring, graph: Graph | None) -> Verdict:
    seen: dict[tuple[int, int], Edge] = {}
    for e, c in coloring.assignment.items():
        if graph is not None and e not in graph.edge_set:
            return Verdict(False, "proper_coloring", e, f"colored edge {e} is not in the graph")
        for x in e:
            key = (x, c)
            if key in seen:
                return Verdict(
                    False, "proper_coloring", x, f"edges {seen[key]} and {e} share node {x} and color {c}"
                )
            seen[key] = e
    if graph is not None and len(coloring.assignment) != graph.m:
        e = next(e for e in graph.edges if e not in coloring.assignment)
        return Verdict(False, "proper_coloring", e, f"edge {e} is uncolored")
    return Verdict(True, "proper_coloring")


def _check_three_graph(graph: Graph) -> Verdict:
    if graph.max_degree > 3:
        v = next(v for v in graph.sorted_nodes if graph.degree(v) > 3)
        return Verdict(False, "three_graph", v, f"node {v} has degree {graph.degree(v)} > 3")
    for u, v in graph.edges:
        if graph.degree(u) == 3 and graph.degree(v) == 3:
            return Verdict(False, "three_graph", (u, v), f"degree-3 nodes {u} and {v} are adjacent")
    return Verdict(True, "three_graph")


def _check_split(pair, bound: float, graph: Graph | None) -> Verdict:
    a, b = pair
    ea, eb = set(_edges_of(a)), set(_edges_of(b))
    if graph is not None:
        both = ea & eb
        if both:
            e = min(both)
            return Verdict(False, "split_discrepancy", e, f"edge {e} is on both sides")
        missing = graph.edge_set - ea - eb
        if missing:
            e = min(missing)
            return Verdict(False, "split_discrepancy", e, f"edge {e} is on neither side")
        extra = (ea | eb) - graph.edge_set
        if extra:
            e = min(extra)
            return Verdict(False, "split_discrepancy", e, f"edge {e} is not in the graph")
    disc = split_discrepancies(ea, eb)
    for v in sorted(disc):
        if disc[v] > bound:
            return Verdict(False, "split_discrepancy", v, f"node {v} has discrepancy {disc[v]} > {bound}")
    return Verdict(True, "split_discrepancy")


def split_discrepancies(a: Iterable[Edge], b: Iterable[Edge]) -> dict[int, int]:
    bal: dict[int, int] = {}
    for e in a:
        for x in e:
            bal[x] = bal.get(x, 0) + 1
    for e in b:
        for x in e:
            bal[x] = bal.get(x, 0) - 1
    return {v: abs(d) for v, d in bal.items()}


def log2n(n: int) -> float:
    """``log2`` of the node count, floored at 1 so schedules stay defined on tiny graphs."""
    return math.log2(max(n, 2))
