"""Matching primitives.

Greedy canonical-order algorithms stand in for the distributed maximal
matching and hypergraph maximal matching subroutines; their round costs are
priced by :mod:`edgecolor.ledger`, not simulated.  The weighted matching
approximation, the hit/combine/priority-merge machinery behind pervasive
matchings, and the phase-based skewed bipartite matcher are implemented in
full.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import networkx as nx

from .errors import BlowUpError, OracleCapError, PreconditionError
from .graph import (
    DegreeClassPartition,
    Edge,
    Graph,
    Matching,
    WeightedGraph,
    canon,
    symmetric_difference_decompose,
)

# enumeration guards: augmentation counts grow like Delta**O(length)
MAX_AUGMENTATION_LENGTH = 24
MAX_SEARCH_STATES = 2_000_000
ORACLE_CAP = 16


def greedy_maximal_matching(graph: Graph, start: Matching | None = None) -> Matching:
    """Maximal matching by scanning edges in canonical order.

    With ``start`` the scan extends that matching instead of the empty one.
    """
    mate: set[int] = set(start.matched_nodes) if start is not None else set()
    chosen = list(start.edges) if start is not None else []
    for u, v in graph.edges:
        if u not in mate and v not in mate:
            mate.add(u)
            mate.add(v)
            chosen.append((u, v))
    return Matching(chosen)


# ---------------------------------------------------------------------------
# augmentations and the hypergraph sweep


@dataclass(frozen=True)
class Augmentation:
    """A short augmenting path or cycle ``S`` relative to a matching ``M``.

    ``removed`` holds ``M(S)``, the matching edges touching ``S``;
    ``footprint`` is every node those edges touch.
    """

    s_edges: tuple[Edge, ...]
    removed: tuple[Edge, ...]
    shape: str
    gain: Fraction
    rank: int
    footprint: frozenset[int]

    def __len__(self):
        return len(self.s_edges)

    @property
    def sort_key(self):
        return (-self.gain, tuple(sorted(self.footprint)), self.s_edges)


@dataclass
class AugmentationHypergraph:
    """Hyperedges are augmentations of one rank; each covers its footprint."""

    rank: int
    hyperedges: list[Augmentation] = field(default_factory=list)

    def __len__(self):
        return len(self.hyperedges)

    def without_nodes(self, nodes: Iterable[int]) -> "AugmentationHypergraph":
        drop = frozenset(nodes)
        return AugmentationHypergraph(self.rank, [a for a in self.hyperedges if not (a.footprint & drop)])


def hypergraph_greedy_maximal_matching(
    hypergraph: AugmentationHypergraph,
    priority: Callable[[Augmentation], object] | None = None,
) -> list[Augmentation]:
    """Maximal set of footprint-disjoint hyperedges, greedy in priority order.

    The default order is descending gain, ties broken by the sorted footprint.
    """
    key = priority or (lambda a: a.sort_key)
    used: set[int] = set()
    chosen = []
    for aug in sorted(hypergraph.hyperedges, key=key):
        if used.isdisjoint(aug.footprint):
            chosen.append(aug)
            used |= aug.footprint
    return chosen


def rank_unit(wg: WeightedGraph, ell: int) -> Fraction:
    """Gain scale ``wmin / (ell * n)`` at which rank buckets start."""
    return wg.wmin / (ell * max(wg.graph.n, 1))


def gain_rank(gain: Fraction, unit: Fraction) -> int:
    """0 when ``gain <= unit``; else the smallest ``i`` with ``gain <= 2**i * unit``."""
    if gain <= unit:
        return 0
    i, bound = 1, 2 * unit
    while gain > bound:
        i += 1
        bound *= 2
    return i


def max_rank(wg: WeightedGraph, ell: int) -> int:
    """Smallest rank whose bucket holds the largest possible gain ``ell * wmax``."""
    return max(1, gain_rank(ell * wg.wmax, rank_unit(wg, ell)))


def enumerate_augmentations(
    wg: WeightedGraph,
    matching: Matching,
    ell: int,
    *,
    max_length: int = MAX_AUGMENTATION_LENGTH,
    max_states: int = MAX_SEARCH_STATES,
) -> list[Augmentation]:
    """Every positive-gain augmenting path and cycle with at most ``ell`` new edges.

    The search walks alternating sequences out of each non-matching edge in
    both directions, so it is complete; duplicates are removed by the
    ``S`` edge set.  Effective length is capped by ``n // 2`` since no simple
    alternating structure can be longer.
    """
    if ell < 1:
        raise PreconditionError("augmentation length must be at least 1")
    graph = wg.graph
    effective = min(ell, graph.n // 2)
    if effective > max_length:
        raise BlowUpError(
            f"augmentation length {effective} exceeds the blow-up cap max_length={max_length}"
        )
    # integer weights on a common denominator keep the inner loop cheap
    scale = math.lcm(*(Fraction(x).denominator for x in wg.w.values())) if wg.w else 1
    w = {e: int(Fraction(x) * scale) for e, x in wg.w.items()}
    mate = {v: matching.mate(v) for v in graph.nodes if matching.covers(v)}
    unit = rank_unit(wg, ell)
    found: dict[frozenset[Edge], Augmentation] = {}
    states = 0

    def record(s_edges, removed, shape, gain):
        if gain <= 0:
            return
        key = frozenset(s_edges)
        if key in found:
            return
        g = Fraction(gain, scale)
        foot = frozenset(x for e in s_edges for x in e) | frozenset(x for e in removed for x in e)
        found[key] = Augmentation(tuple(sorted(s_edges)), tuple(sorted(removed)), shape, g, gain_rank(g, unit), foot)

    def grow(x, m0, on_path, s_edges, removed, gain):
        # x was just reached through an S edge; gain is w(S) - w(removed) so far
        nonlocal states
        states += 1
        if states > max_states:
            raise BlowUpError(f"augmentation search exceeded the blow-up cap max_states={max_states}")
        q = mate.get(x)
        if q is None:
            record(s_edges, removed, "path", gain)
            return
        xq = canon(x, q)
        gain -= w[xq]
        removed.append(xq)
        on_path.add(q)
        record(s_edges, removed, "path", gain)
        if len(s_edges) < effective:
            for r in graph.neighbors(q):
                if r == x:
                    continue
                qr = canon(q, r)
                if r == m0:
                    s_edges.append(qr)
                    record(s_edges, removed, "cycle", gain + w[qr])
                    s_edges.pop()
                elif r not in on_path:
                    s_edges.append(qr)
                    on_path.add(r)
                    grow(r, m0, on_path, s_edges, removed, gain + w[qr])
                    on_path.discard(r)
                    s_edges.pop()
        on_path.discard(q)
        removed.pop()

    for p0 in graph.sorted_nodes:
        m0 = mate.get(p0)
        for p1 in graph.neighbors(p0):
            if m0 == p1:
                continue
            on_path = {p0, p1}
            removed = []
            gain = w[canon(p0, p1)]
            if m0 is not None:
                on_path.add(m0)
                removed.append(canon(p0, m0))
                gain -= w[canon(p0, m0)]
            grow(p1, m0, on_path, [canon(p0, p1)], removed, gain)

    return sorted(found.values(), key=lambda a: a.sort_key)


def apply_augmentations(matching: Matching, augmentations: Sequence[Augmentation]) -> Matching:
    drop = {e for a in augmentations for e in a.removed}
    add = [e for a in augmentations for e in a.s_edges]
    return Matching([e for e in matching.edges if e not in drop] + add)


# ---------------------------------------------------------------------------
# exact solvers


def exact_max_weight_matching(wg: WeightedGraph) -> Matching:
    """Exact maximum-weight matching via networkx's blossom implementation."""
    g = nx.Graph()
    g.add_nodes_from(wg.graph.sorted_nodes)
    for e in wg.graph.edges:
        g.add_edge(*e, weight=wg.w[e])
    return Matching(nx.max_weight_matching(g))


def brute_force_max_weight_matching(wg: WeightedGraph, cap: int = ORACLE_CAP) -> Matching:
    """Exhaustive maximum-weight matching, one component at a time.

    Memoised over the subset of still-available nodes, so every matching of
    a component is considered.  Ties go to the first optimum in canonical
    order (lowest node left unmatched before trying its neighbours).
    """
    graph = wg.graph
    chosen: list[Edge] = []
    for comp in graph.components():
        if len(comp) < 2:
            continue
        if len(comp) > cap:
            raise OracleCapError(
                f"component with {len(comp)} nodes exceeds the brute-force oracle cap of {cap}"
            )
        index = {v: i for i, v in enumerate(comp)}
        nbrs = [[index[u] for u in graph.neighbors(v)] for v in comp]
        weights = {}
        for v in comp:
            for u in graph.neighbors(v):
                weights[(index[v], index[u])] = wg.w[canon(v, u)]
        memo: dict[int, tuple[Fraction, tuple]] = {0: (Fraction(0), ())}

        def best(mask: int) -> tuple[Fraction, tuple]:
            if mask in memo:
                return memo[mask]
            low = (mask & -mask).bit_length() - 1
            rest = mask & ~(1 << low)
            top = best(rest)
            for j in nbrs[low]:
                if rest >> j & 1:
                    val, pairs = best(rest & ~(1 << j))
                    val = val + weights[(low, j)]
                    if val > top[0]:
                        top = (val, pairs + ((low, j),))
            memo[mask] = top
            return top

        _, pairs = best((1 << len(comp)) - 1)
        chosen.extend(canon(comp[a], comp[b]) for a, b in pairs)
    return Matching(chosen)


# ---------------------------------------------------------------------------
# approximate weighted matching


@dataclass
class ApproxTrace:
    """Bookkeeping from one approximate weighted matching run."""

    ell: int = 0
    r_max: int = 0
    iteration_cap: int = 0
    exact_components: int = 0
    augmenting_components: int = 0
    weights: list[Fraction] = field(default_factory=list)
    applied: list[int] = field(default_factory=list)


def iteration_cap(ell: int) -> int:
    return math.ceil(4 * ell * math.log(2 * ell))


def _diameter_at_most(graph: Graph, comp: Sequence[int], limit: Fraction) -> bool:
    ecc = max(graph.bfs_distances(comp[0]).values())
    if ecc > limit:
        return False
    if 2 * ecc <= limit:
        return True
    for v in comp[1:]:
        if max(graph.bfs_distances(v).values()) > limit:
            return False
    return True


def approx_weighted_matching(
    wg: WeightedGraph,
    eps,
    *,
    exact_small_diameter: bool = True,
    max_length: int = MAX_AUGMENTATION_LENGTH,
    max_states: int = MAX_SEARCH_STATES,
    trace: ApproxTrace | None = None,
) -> Matching:
    """Maximal matching of weight at least ``(1 - eps)`` times the optimum.

    Components of diameter at most ``2/eps`` are solved exactly.  The rest
    start from the empty matching and repeatedly apply a maximal set of
    independent positive-gain augmentations of length at most
    ``ceil(2/eps)``, picked rank by rank from the highest; ranks are fixed
    for the whole sweep and rank 0 is never applied.  The loop stops early
    once a sweep selects nothing.  The result is extended greedily to a
    maximal matching.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise PreconditionError(f"eps must lie in (0, 1), got {eps}")
    graph = wg.graph
    ell = math.ceil(2 / eps)
    tr = trace if trace is not None else ApproxTrace()
    tr.ell = ell
    tr.r_max = max_rank(wg, ell)
    tr.iteration_cap = iteration_cap(ell)

    exact_nodes: list[int] = []
    loop_nodes: list[int] = []
    for comp in graph.components():
        if len(comp) < 2:
            continue
        if exact_small_diameter and _diameter_at_most(graph, comp, 2 / eps):
            exact_nodes.extend(comp)
            tr.exact_components += 1
        else:
            loop_nodes.extend(comp)
            tr.augmenting_components += 1

    edges: list[Edge] = []
    if exact_nodes:
        sub = graph.induced(exact_nodes)
        edges.extend(exact_max_weight_matching(wg.restrict(sub)).edges)
    if loop_nodes:
        sub = wg.restrict(Graph(graph.nodes, graph.induced(loop_nodes).edges, check=False))
        edges.extend(_augment_loop(sub, wg, ell, tr, max_length, max_states).edges)
    return greedy_maximal_matching(graph, Matching(edges))


def _augment_loop(sub: WeightedGraph, full: WeightedGraph, ell, tr, max_length, max_states) -> Matching:
    # ranks use the global wmin and n so they agree with the full instance
    unit = rank_unit(full, ell)
    r_max = max_rank(full, ell)
    matching = Matching()
    weight = Fraction(0)
    for _ in range(iteration_cap(ell)):
        augs = enumerate_augmentations(sub, matching, ell, max_length=max_length, max_states=max_states)
        by_rank: dict[int, list[Augmentation]] = {}
        for a in augs:
            r = gain_rank(a.gain, unit)
            if r > r_max:
                raise AssertionError(f"augmentation rank {r} above r_max={r_max}")
            by_rank.setdefault(r, []).append(a)
        blocked: set[int] = set()
        selected: list[Augmentation] = []
        for r in range(r_max, 0, -1):
            h = AugmentationHypergraph(r, by_rank.get(r, [])).without_nodes(blocked)
            chosen = hypergraph_greedy_maximal_matching(h)
            for a in chosen:
                blocked |= a.footprint
            selected.extend(chosen)
        if not selected:
            break
        matching = apply_augmentations(matching, selected)
        new_weight = matching.weight(sub.w)
        if new_weight <= weight:
            raise AssertionError("augmentation sweep did not increase the matching weight")
        weight = new_weight
        tr.weights.append(weight)
        tr.applied.append(len(selected))
    return matching


# ---------------------------------------------------------------------------
# hit matchings, combination and the pervasive matching


def hit_matching(graph: Graph, targets: Iterable[int], min_degree: int, eps, **kwargs) -> Matching:
    """Matching that hits a ``(1-eps) * min_degree / (maxdeg + 1)`` share of ``targets``.

    Solved as a weighted matching where an edge weighs the number of target
    endpoints it has; weight-0 edges are dropped.
    """
    targets = frozenset(targets)
    if min_degree < 1:
        raise PreconditionError("target degree floor must be at least 1")
    for v in sorted(targets):
        if graph.degree(v) < min_degree:
            raise PreconditionError(f"target node {v} has degree {graph.degree(v)} < {min_degree}")
    weights = {}
    for u, v in graph.edges:
        k = (u in targets) + (v in targets)
        if k:
            weights[(u, v)] = k
    if not weights:
        return Matching()
    sub = Graph(graph.nodes, weights, check=False)
    return approx_weighted_matching(WeightedGraph(sub, weights), eps, **kwargs)


def combine_matchings(graph: Graph, m_a: Matching, m_b: Matching, targets: Iterable[int], k: int) -> Matching:
    """Merge ``m_b``'s coverage of ``targets`` into ``m_a``.

    ``m_b`` is first cut down to edges touching ``targets``.  Starting from
    ``m_a``, every maximal alternating path of length at most ``4k`` that has
    a blue end edge and an endpoint in ``targets`` covered by ``m_b`` but not
    by ``m_a`` is flipped: its ``m_a`` edges leave, its ``m_b`` edges enter.
    """
    if k < 1:
        raise PreconditionError("k must be at least 1")
    targets = frozenset(targets)
    m_b = Matching(e for e in m_b.edges if e[0] in targets or e[1] in targets)
    s_a = m_a.hits(targets)
    s_b = m_b.hits(targets)
    fresh = s_b - s_a
    drop: set[Edge] = set()
    add: list[Edge] = []
    for comp in symmetric_difference_decompose(m_a, m_b):
        if comp.is_cycle or len(comp) > 4 * k:
            continue
        blue_ends = comp.endpoint_blue
        if not any(blue_ends):
            continue
        if not (comp.nodes[0] in fresh or comp.nodes[-1] in fresh):
            continue
        drop.update(comp.edges_of("green"))
        add.extend(comp.edges_of("blue"))
    return Matching([e for e in m_a.edges if e not in drop] + add)


@dataclass
class PervasiveTrace:
    partition: DegreeClassPartition | None = None
    class_matchings: list[Matching] = field(default_factory=list)
    folded: list[Matching] = field(default_factory=list)


def pervasive_matching(
    graph: Graph,
    delta: int,
    t: int,
    eps,
    *,
    trace: PervasiveTrace | None = None,
    **kwargs,
) -> Matching:
    """Maximal matching that, for every ``i <= t``, hits a
    ``(1-eps)(delta-i)/(maxdeg+1)`` share of the nodes of degree at least
    ``delta - i``.

    Classes ``V_j`` hold the nodes of degree exactly ``delta - t + j - 1``;
    one hit matching per suffix union (at ``eps/2``) is folded in from the
    lowest degree class upward with ``k = ceil(2/eps)``, so higher-degree
    classes take priority, and the result is extended to a maximal matching.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise PreconditionError(f"eps must lie in (0, 1), got {eps}")
    if t < 0:
        raise PreconditionError("t must be non-negative")
    if delta < graph.max_degree:
        raise PreconditionError(f"declared degree bound {delta} is below the maximum degree {graph.max_degree}")
    partition = DegreeClassPartition.by_exact_degree(graph, [delta - t + j - 1 for j in range(1, t + 2)])
    k = math.ceil(2 / eps)
    per_class = []
    for union, floor in zip(partition.suffix_unions, partition.min_degrees):
        if floor >= 1 and union:
            per_class.append(hit_matching(graph, union, floor, eps / 2, **kwargs))
        else:
            per_class.append(Matching())
    folded = [per_class[0]]
    for union, m_i in zip(partition.suffix_unions[1:], per_class[1:]):
        folded.append(combine_matchings(graph, folded[-1], m_i, union, k))
    result = greedy_maximal_matching(graph, folded[-1])
    if trace is not None:
        trace.partition = partition
        trace.class_matchings = per_class
        trace.folded = folded
    return result


def pervasive_bound(graph: Graph, delta: int, i: int, eps) -> Fraction:
    """Required hit fraction over nodes of degree at least ``delta - i``."""
    return (1 - Fraction(eps)) * Fraction(delta - i, graph.max_degree + 1)


# ---------------------------------------------------------------------------
# skewed bipartite maximum matching


def bipartite_matching_phases(graph: Graph, left: Iterable[int], right: Iterable[int]) -> tuple[Matching, list[int]]:
    """Maximum matching of a bipartite graph whose ``left`` degrees all exceed
    the ``right`` degrees, plus the shortest augmenting-path length of each phase.

    Each phase flips a maximal set of node-disjoint shortest augmenting paths.
    """
    left = frozenset(left)
    right = frozenset(right)
    if not left:
        return Matching(), []
    if left & right:
        raise PreconditionError("bipartition sides overlap")
    for u, v in graph.edges:
        if not ((u in left and v in right) or (u in right and v in left)):
            raise PreconditionError(f"edge {(u, v)} does not cross the bipartition")
    d = min(graph.degree(u) for u in left)
    f = max((graph.degree(v) for v in right if v in graph.nodes), default=0)
    if d <= f:
        raise PreconditionError(f"need min left degree d > max right degree f, got d={d}, f={f}")

    order = sorted(left)
    pair: dict[int, int] = {}
    phases: list[int] = []
    inf = math.inf
    while True:
        dist: dict[int, float] = {}
        frontier = [u for u in order if u not in pair]
        for u in frontier:
            dist[u] = 0
        found = inf
        while frontier and found == inf:
            nxt = []
            for u in frontier:
                for v in graph.neighbors(u):
                    w = pair.get(v)
                    if w is None:
                        found = min(found, dist[u])
                    elif w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        if found == inf:
            break
        length = 2 * int(found) + 1
        if phases and length <= phases[-1]:
            raise AssertionError(f"augmenting path length did not grow: {phases[-1]} -> {length}")
        phases.append(length)
        used: set[int] = set()

        def dfs(u: int) -> bool:
            for v in graph.neighbors(u):
                if v in used:
                    continue
                w = pair.get(v)
                if w is None:
                    if dist[u] == found:
                        used.add(v)
                        pair[u], pair[v] = v, u
                        return True
                elif dist.get(w) == dist[u] + 1 and w not in used:
                    used.add(v)
                    used.add(w)
                    if dfs(w):
                        pair[u], pair[v] = v, u
                        return True
            return False

        for u in order:
            if u not in pair:
                used.add(u)
                dfs(u)
    return Matching(canon(u, pair[u]) for u in order if u in pair), phases


def bipartite_max_matching(graph: Graph, left: Iterable[int], right: Iterable[int]) -> Matching:
    matching, _ = bipartite_matching_phases(graph, left, right)
    return matching
