"""Seeded graph generators.

All randomness in the package comes from :class:`SplitMix64` and is used
only here; the coloring algorithms themselves are deterministic.

Generator specs are strings such as ``gnm:50:100``, ``dregular:6:5``,
``bipartite_skewed:10:20:4:2``, ``path:4``, ``cycle:5`` or
``weighted:gnm:50:100:10`` (the last field is the weight ratio).  The call
form ``gnm(50,100)`` is accepted too.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import PreconditionError, UsageError
from .graph import Edge, Graph, WeightedGraph, canon

MASK = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 sequence: add a Weyl constant, then two xor-shift-multiply rounds."""

    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection, so there is no modulo bias."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def gnm(n: int, m: int, rng: SplitMix64) -> Graph:
    if n < 0 or m < 0 or m > n * (n - 1) // 2:
        raise PreconditionError(f"gnm({n}, {m}) is infeasible")
    edges: set[Edge] = set()
    while len(edges) < m:
        u, v = rng.below(n) + 1, rng.below(n) + 1
        if u != v:
            edges.add(canon(u, v))
    return Graph.from_edges(edges)


def dregular(n: int, d: int, rng: SplitMix64, *, attempts: int = 50) -> Graph:
    """Configuration model with rejection of loops and multi-edges.

    Bad pairs are re-shuffled a bounded number of times and then repaired by
    edge switches; an attempt that still fails is restarted.
    """
    if d < 0 or d >= max(n, 1) or (n * d) % 2:
        raise PreconditionError(f"dregular({n}, {d}) is infeasible")
    for _ in range(attempts):
        g = _pair_stubs(n, d, rng)
        if g is not None:
            return g
    raise PreconditionError(f"dregular({n}, {d}): retry budget of {attempts} attempts exhausted")


def _pair_stubs(n: int, d: int, rng: SplitMix64) -> Graph | None:
    stubs = [v for v in range(1, n + 1) for _ in range(d)]
    edges: set[Edge] = set()
    for _ in range(100):
        if not stubs:
            break
        rng.shuffle(stubs)
        left = []
        for k in range(0, len(stubs), 2):
            u, v = stubs[k], stubs[k + 1]
            if u == v or canon(u, v) in edges:
                left += [u, v]
            else:
                edges.add(canon(u, v))
        stubs = left
    # switch repair: swap a bad pair (u, v) with an existing edge (x, y)
    budget = 100 * (len(stubs) + 1)
    while stubs and budget:
        budget -= 1
        u, v = stubs[-2], stubs[-1]
        pool = sorted(edges)
        x, y = pool[rng.below(len(pool))]
        if len({u, v, x, y}) < 4 or canon(u, x) in edges or canon(v, y) in edges:
            rng.shuffle(stubs)
            continue
        edges.discard((x, y))
        edges.add(canon(u, x))
        edges.add(canon(v, y))
        del stubs[-2:]
    return None if stubs else Graph.from_edges(edges)


def bipartite_skewed(n_u: int, n_v: int, d: int, f: int, rng: SplitMix64) -> tuple[Graph, frozenset[int], frozenset[int]]:
    """Every ``U`` node gets degree ``d``; ``V`` nodes get degree at most ``f < d``.

    ``U`` is ``1..n_u`` and ``V`` follows.  Each ``U`` node links to the
    ``d`` ``V`` nodes with the most spare capacity, ties broken at random,
    which always succeeds when ``n_u * d <= n_v * f``.
    """
    if not (0 < f < d <= n_v) or n_u * d > n_v * f:
        raise PreconditionError(f"bipartite_skewed({n_u}, {n_v}, {d}, {f}) is infeasible")
    left = list(range(1, n_u + 1))
    right = list(range(n_u + 1, n_u + n_v + 1))
    cap = dict.fromkeys(right, f)
    edges = []
    for u in left:
        keys = {v: rng.next_u64() for v in right}
        chosen = sorted(right, key=lambda v: (-cap[v], keys[v]))[:d]
        for v in chosen:
            cap[v] -= 1
            edges.append((u, v))
    return Graph.from_edges(edges), frozenset(left), frozenset(right)


def path(n: int) -> Graph:
    if n < 2:
        raise PreconditionError("path needs at least 2 nodes")
    return Graph.from_edges((i, i + 1) for i in range(1, n))


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle needs at least 3 nodes")
    return Graph.from_edges([(i, i + 1) for i in range(1, n)] + [(1, n)])


def weighted(graph: Graph, wmax_ratio: int, rng: SplitMix64) -> WeightedGraph:
    """Integer weights drawn uniformly from ``[1, wmax_ratio]`` in canonical edge order."""
    if wmax_ratio < 1:
        raise PreconditionError("weight ratio must be at least 1")
    return WeightedGraph(graph, {e: Fraction(rng.below(wmax_ratio) + 1) for e in graph.edges})


_ARITY = {"gnm": 2, "dregular": 2, "bipartite_skewed": 4, "path": 1, "cycle": 1}


def parse_spec(spec: str) -> list[str]:
    parts = [p for p in re.split(r"[:(),\s]+", spec.strip()) if p]
    if not parts:
        raise UsageError("empty generator spec")
    return parts


def generate(spec: str, seed: int = 0):
    """Build the graph a spec describes.

    Returns a ``Graph``, a ``WeightedGraph`` for ``weighted:...`` specs, or
    ``(Graph, U, V)`` for ``bipartite_skewed``.  Fixed ``(spec, seed)`` always
    gives the same result.
    """
    parts = parse_spec(spec)
    rng = SplitMix64(seed)
    if parts[0] == "weighted":
        inner, ratio = parts[1:-1], parts[-1]
        if not inner:
            raise UsageError(f"bad generator spec {spec!r}")
        base = _build(inner, rng, spec)
        if isinstance(base, tuple):
            base = base[0]
        return weighted(base, _int(ratio, spec), rng)
    return _build(parts, rng, spec)


def _int(x: str, spec: str) -> int:
    try:
        return int(x)
    except ValueError:
        raise UsageError(f"bad generator spec {spec!r}: {x!r} is not an integer") from None


def _build(parts: list[str], rng: SplitMix64, spec: str):
    kind, args = parts[0], parts[1:]
    if kind not in _ARITY:
        raise UsageError(f"unknown generator {kind!r}; expected one of {', '.join(_ARITY)} or weighted")
    if len(args) != _ARITY[kind]:
        raise UsageError(f"bad generator spec {spec!r}: {kind} takes {_ARITY[kind]} parameters")
    nums = [_int(a, spec) for a in args]
    if kind == "gnm":
        return gnm(*nums, rng)
    if kind == "dregular":
        return dregular(*nums, rng)
    if kind == "bipartite_skewed":
        return bipartite_skewed(*nums, rng)
    if kind == "path":
        return path(*nums)
    return cycle(*nums)
