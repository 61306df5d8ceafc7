import itertools
import math
import random
from fractions import Fraction

import pytest

from conftest import random_bounded_degree_graph, random_graph
from edgecolor.coloring import (
    PhaseSchedule,
    RunContext,
    build_split_tree,
    color_3graph,
    color_degree_le2,
    degree_split,
    eps_edge_coloring,
    extract_3graph,
    extraction_violations,
    full_coloring,
    greedy_coloring,
    reduce_degree_phase,
    split_depth,
    three_halves_budget,
    three_halves_coloring,
    tight_palette_coloring,
)
from edgecolor.errors import GuaranteeError, PreconditionError
from edgecolor.graph import Graph, validate


def proper(col, g):
    return validate(col, "proper_coloring", graph=g).ok


def cycle(n):
    return Graph.from_edges([(i, i % n + 1) for i in range(1, n + 1)])


# schedule


def test_phase_schedule_invariants():
    for eps in (Fraction(1, 2), Fraction(3, 10), Fraction(1, 7), Fraction(1, 20)):
        s = PhaseSchedule(eps, 1024)
        assert s.eps_prime == eps / 120
        # eps' = eps/120 and the stop at 1/(4e) give l <= log2(1/eps) + log2(30/e)
        assert s.last <= math.log2(1 / eps) + math.log2(30 / math.e)
        assert float(s.phase_eps(s.last + 1)) >= 1 / (4 * math.e)
        assert float(s.phase_eps(s.last)) < 1 / (4 * math.e)
        for i in range(s.last):
            assert s.phase_eps(i + 1) == 2 * s.phase_eps(i)
            assert s.threshold(i + 1) == pytest.approx(s.threshold(i) / 2)
        assert s.steps(0) == math.ceil(10 / (4 * math.e * float(eps / 120)))


# degree reduction


def test_reduce_empty_graph():
    res = reduce_degree_phase(Graph([1, 2], []), 0, Fraction(1, 10), 3)
    assert len(res.coloring) == 0 and res.residual.m == 0


def test_reduce_perfect_matching_one_color():
    g = Graph.from_edges([(1, 2), (3, 4), (5, 6)])
    res = reduce_degree_phase(g, 1, Fraction(1, 10), 1)
    assert res.coloring.palette_count == 1 and res.residual.m == 0


def test_reduce_classes_are_matchings_and_at_most_T():
    rng = random.Random(4)
    g = random_graph(rng, 40, 150)
    ctx = RunContext(mode="report")
    res = reduce_degree_phase(g, g.max_degree, Fraction(1, 10), 5, palette_base=7, ctx=ctx)
    assert res.coloring.palette_count <= 5
    assert min(res.coloring.colors) == 7
    assert validate(res.coloring, "proper_coloring")
    assert res.residual.m + len(res.coloring) == g.m
    assert len(res.census) == res.coloring.palette_count + 1


# the (1 + eps) Delta driver


def test_eps_single_color_for_matching():
    g = Graph.from_edges([(1, 2), (3, 4)])
    assert eps_edge_coloring(g, 1, Fraction(1, 2)).palette_count == 1


def test_eps_four_cycle():
    c4 = cycle(4)
    col = eps_edge_coloring(c4, 2, Fraction(1, 2))
    assert proper(col, c4) and col.palette_count <= 3


def test_eps_precondition_unmet_is_informational():
    rng = random.Random(9)
    g = random_graph(rng, 256, 3072)
    ctx = RunContext()
    col = eps_edge_coloring(g, None, Fraction(3, 10), ctx=ctx)
    assert proper(col, g)
    (bound,) = [c for c in ctx.checks if c.name == "eps_color_bound"]
    assert bound.status == "informational"


def test_eps_phase_bookkeeping_with_small_thresholds(monkeypatch):
    # force the phase loop on a small graph by shrinking the thresholds
    monkeypatch.setattr(PhaseSchedule, "threshold", lambda self, i: 8 / 2**i)
    monkeypatch.setattr(PhaseSchedule, "steps", lambda self, i: 3)
    rng = random.Random(2)
    g = random_bounded_degree_graph(rng, 40, 12)
    ctx = RunContext(mode="report")
    col = eps_edge_coloring(g, None, Fraction(1, 2), ctx=ctx)
    assert proper(col, g)
    assert any(c.name == "tracked_degree_bound" for c in ctx.checks)
    assert all(c.holds for c in ctx.checks if c.name == "phase_colors")


def test_eps_rejects_bad_eps():
    with pytest.raises(PreconditionError):
        eps_edge_coloring(cycle(4), 2, Fraction(3, 2))


# degree split


def test_split_four_cycle():
    s = degree_split(cycle(4), Fraction(1, 10))
    assert s.a.m == 2 and s.b.m == 2 and s.max_discrepancy == 0


def test_split_single_edge():
    s = degree_split(Graph.from_edges([(1, 2)]), Fraction(1, 10))
    assert s.discrepancy == {1: 1, 2: 1}


def test_split_star():
    star = Graph.from_edges([(1, v) for v in range(2, 6)])
    s = degree_split(star, Fraction(1, 10))
    assert s.a.degree(1) == 2 and s.b.degree(1) == 2
    assert s.discrepancy == {1: 0, 2: 1, 3: 1, 4: 1, 5: 1}


@pytest.mark.parametrize("seed", range(30))
def test_split_random(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 40), rng.randint(1, 120))
    s = degree_split(g, Fraction(1, 10))
    assert validate((s.a, s.b), "split_discrepancy", bound=2, graph=g)


# full coloring


def test_full_single_color():
    g = Graph.from_edges([(1, 2), (3, 4)])
    assert full_coloring(g, 1, Fraction(1, 2)).palette_count == 1


def test_full_dispatches_to_three_halves_below_threshold(k4):
    ctx = RunContext()
    col = full_coloring(k4, 3, Fraction(1, 2), ctx=ctx)
    assert ctx.artifacts["full_path"] == "three_halves"
    assert col.palette_count <= three_halves_budget(3)


def test_split_depth_two_levels():
    gamma = Fraction(1, 16) / (20 * 4)
    assert split_depth(16, 3, gamma) == 2
    assert split_depth(16, 100, gamma) == 0


def test_full_two_split_levels():
    rng = random.Random(11)
    g = random_bounded_degree_graph(rng, 60, 16)
    ctx = RunContext()
    col = full_coloring(g, 16, Fraction(1, 2), threshold=3, ctx=ctx)
    tree = ctx.artifacts["split_tree"]
    assert tree.h == 2 and len(tree.leaves) == 4
    assert tree.degree_bounds == [16, 9, 6]
    for parent_level, child_level in zip(tree.levels, tree.levels[1:]):
        for k, parent in enumerate(parent_level):
            a, b = child_level[2 * k], child_level[2 * k + 1]
            assert a.edge_set | b.edge_set == parent.edge_set and not a.edge_set & b.edge_set
    for leaf, bound in zip(tree.leaves, itertools.repeat(tree.degree_bounds[-1])):
        assert leaf.max_degree <= bound
    for p, q in itertools.combinations(tree.palettes, 2):
        assert not set(p) & set(q)
    assert proper(col, g)
    assert col.palette_count == sum(len(p) for p in tree.palettes)


def test_split_tree_without_split():
    tree = build_split_tree(cycle(5), 2, Fraction(1, 2), 100)
    assert tree.h == 0 and tree.leaves == [cycle(5)]


# tight palette


def test_tight_single_color():
    g = Graph.from_edges([(1, 2)])
    ctx = RunContext()
    assert tight_palette_coloring(g, ctx=ctx).palette_count == 1
    assert ctx.artifacts["overhead"] == 0


def test_tight_small_graph_routes_through_full(k4):
    ctx = RunContext()
    col = tight_palette_coloring(k4, ctx=ctx)
    assert ctx.artifacts["tight_path"] == "full" and proper(col, k4)


# (3)-graphs and the 3/2 algorithm


def test_extract_k4_trace(k4):
    tr = extract_3graph(k4, 3)
    assert sorted(tr.m1) == [(1, 2), (3, 4)]
    assert len(tr.m2) == 0 and len(tr.m4) == 0 and len(tr.m_prime) == 0
    assert sorted(tr.m3) == [(1, 3), (2, 4)]
    assert tr.h.edges == ((1, 2), (1, 3), (2, 4), (3, 4))
    assert tr.residual.edges == ((1, 4), (2, 3)) and tr.residual.max_degree == 1
    assert tr.f == tr.m1.edges | tr.m2.edges | tr.m3.edges | tr.m4.edges


def test_extract_rejects_small_delta():
    with pytest.raises(PreconditionError):
        extract_3graph(cycle(4), 2)


@pytest.mark.parametrize("seed", range(20))
def test_extract_random_delta5(seed):
    g = random_bounded_degree_graph(random.Random(seed), 40, 5)
    tr = extract_3graph(g, 5)
    assert extraction_violations(g, tr) == []
    assert tr.f == (tr.m1.edges | tr.m2.edges | tr.m3.edges | tr.m4.edges) - tr.m_prime.edges


def test_color_3graph_examples():
    assert color_3graph(Graph.from_edges([(1, 2)])).palette_count == 1
    assert color_3graph(Graph.from_edges([(1, 2), (1, 3), (1, 4)])).palette_count == 3
    assert color_3graph(cycle(4)).palette_count <= 3


def test_color_3graph_rejects_non_three_graph(k4):
    with pytest.raises(PreconditionError, match="witness"):
        color_3graph(k4)


@pytest.mark.parametrize("seed", range(30))
def test_color_3graph_random(seed):
    g = random_bounded_degree_graph(random.Random(seed), 30, 6)
    h = extract_3graph(g, 6).h
    col = color_3graph(h)
    assert proper(col, h) and col.palette_count <= 3


def test_color_3graph_petersen_like_needs_rotation():
    # subdivided graphs with degree-3 centers force the fan step
    edges = [(1, 2), (1, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 8), (6, 8), (7, 8)]
    g = Graph.from_edges(edges)
    col = color_3graph(g)
    assert proper(col, g) and col.palette_count <= 3


def test_degree_le2_examples():
    p = Graph.from_edges([(1, 2), (2, 3), (3, 4)])
    assert color_degree_le2(p).palette_count == 2
    c5 = cycle(5)
    assert color_degree_le2(c5).palette_count == 3
    both = Graph.from_edges(list(p.edges) + [(a + 10, b + 10) for a, b in c5.edges])
    col = color_degree_le2(both)
    assert proper(col, both) and col.palette_count <= 3
    assert color_degree_le2(cycle(6)).palette_count == 2


def test_degree_le2_rejects_degree3():
    with pytest.raises(PreconditionError):
        color_degree_le2(Graph.from_edges([(1, 2), (1, 3), (1, 4)]))


def test_three_halves_k4(k4):
    col = three_halves_coloring(k4, 3)
    assert proper(col, k4) and col.palette_count <= 4


def test_three_halves_cycle():
    col = three_halves_coloring(cycle(7), 2)
    assert proper(col, cycle(7)) and col.palette_count <= 3


@pytest.mark.parametrize("seed", range(10))
def test_three_halves_delta6(seed):
    g = random_bounded_degree_graph(random.Random(seed), 50, 6)
    col = three_halves_coloring(g, 6)
    assert proper(col, g) and col.palette_count <= 9


def test_three_halves_budget_values():
    assert [three_halves_budget(d) for d in range(1, 8)] == [2, 3, 5, 6, 8, 9, 11]


def test_declared_delta_below_measured(k4):
    with pytest.raises(PreconditionError):
        three_halves_coloring(k4, 2)


# baseline and guarantee plumbing


def test_greedy_k4(k4):
    col = greedy_coloring(k4)
    assert proper(col, k4) and col.palette_count <= 5


def test_hard_mode_raises_on_failed_active_check():
    ctx = RunContext(mode="hard")
    with pytest.raises(GuaranteeError, match="demo"):
        ctx.check("demo", False, detail="forced")
    ctx = RunContext(mode="report")
    assert not ctx.check("demo", False)
    assert ctx.failed and ctx.failed[0].status == "fail"
    assert ctx.check("info", False, active=False) is False
    assert ctx.checks[-1].status == "informational"


def test_colorings_are_deterministic():
    g = random_bounded_degree_graph(random.Random(7), 60, 7)
    for fn in (three_halves_coloring, greedy_coloring, lambda x: eps_edge_coloring(x, None, Fraction(1, 3))):
        assert fn(g) == fn(g)
