import random

import pytest

from edgecolor.graph import Graph, WeightedGraph, canon


def random_graph(rng: random.Random, n: int, m: int) -> Graph:
    m = min(m, n * (n - 1) // 2)
    edges = set()
    while len(edges) < m:
        u, v = rng.sample(range(1, n + 1), 2)
        edges.add(canon(u, v))
    return Graph.from_edges(edges)


def random_bounded_degree_graph(rng: random.Random, n: int, max_deg: int) -> Graph:
    """Random graph with max degree at most ``max_deg``, usually hitting it."""
    deg = dict.fromkeys(range(1, n + 1), 0)
    edges = set()
    for _ in range(n * max_deg):
        u, v = rng.sample(range(1, n + 1), 2)
        e = canon(u, v)
        if e in edges or deg[u] >= max_deg or deg[v] >= max_deg:
            continue
        edges.add(e)
        deg[u] += 1
        deg[v] += 1
    return Graph.from_edges(edges)


def random_weighted(rng: random.Random, n: int, m: int, wmax: int = 10) -> WeightedGraph:
    g = random_graph(rng, n, m)
    return WeightedGraph(g, {e: rng.randint(1, wmax) for e in g.edges})


@pytest.fixture
def k4() -> Graph:
    return Graph.from_edges([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
