import pytest

from edgecolor.errors import PreconditionError, UsageError
from edgecolor.generators import SplitMix64, bipartite_skewed, dregular, generate, gnm, parse_spec
from edgecolor.graph import WeightedGraph


def test_splitmix_reference_values():
    # first outputs for seed 0 as given by the reference C implementation
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


def test_below_is_in_range():
    rng = SplitMix64(5)
    xs = [rng.below(7) for _ in range(500)]
    assert set(xs) == set(range(7))
    with pytest.raises(ValueError):
        rng.below(0)


def test_path_spec():
    g = generate("path:4")
    assert g.n == 4 and g.m == 3 and g.edges == ((1, 2), (2, 3), (3, 4))


def test_cycle_spec_and_call_form():
    assert generate("cycle(5)") == generate("cycle:5")
    assert generate("cycle:5").max_degree == 2


def test_dregular_complete():
    g = generate("dregular:6:5", 3)
    assert g.m == 15 and all(g.degree(v) == 5 for v in g.nodes)


@pytest.mark.parametrize("n,d", [(20, 3), (50, 7), (100, 10), (64, 31)])
def test_dregular_is_regular_and_simple(n, d):
    g = dregular(n, d, SplitMix64(n * d))
    assert g.n == n and g.m == n * d // 2
    assert all(g.degree(v) == d for v in g.nodes)


def test_dregular_infeasible():
    with pytest.raises(PreconditionError):
        dregular(5, 3, SplitMix64(0))
    with pytest.raises(PreconditionError):
        dregular(4, 4, SplitMix64(0))


def test_gnm_deterministic():
    assert gnm(30, 60, SplitMix64(9)) == gnm(30, 60, SplitMix64(9))
    assert gnm(30, 60, SplitMix64(9)) != gnm(30, 60, SplitMix64(10))
    assert gnm(30, 60, SplitMix64(9)).m == 60
    with pytest.raises(PreconditionError):
        gnm(4, 7, SplitMix64(0))


def test_bipartite_skewed_degrees():
    g, left, right = bipartite_skewed(10, 30, 6, 2, SplitMix64(1))
    assert all(g.degree(u) == 6 for u in left)
    assert all(g.degree(v) <= 2 for v in right)
    assert all((u in left) != (v in left) for u, v in g.edges)
    with pytest.raises(PreconditionError):
        bipartite_skewed(10, 10, 3, 3, SplitMix64(1))
    with pytest.raises(PreconditionError):
        bipartite_skewed(10, 5, 3, 2, SplitMix64(1))


def test_weighted_range():
    wg = generate("weighted:gnm:20:40:5", 2)
    assert isinstance(wg, WeightedGraph)
    assert all(1 <= w <= 5 for w in wg.w.values())
    assert set(wg.w) == set(wg.graph.edges)


@pytest.mark.parametrize("spec", ["", "nope:3", "gnm:3", "gnm:a:b", "weighted:5", "path:x"])
def test_bad_specs(spec):
    with pytest.raises(UsageError):
        generate(spec)


def test_parse_spec_forms():
    assert parse_spec("gnm(5, 6)") == ["gnm", "5", "6"]
    assert parse_spec("gnm:5:6") == ["gnm", "5", "6"]
