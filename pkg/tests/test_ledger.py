from fractions import Fraction

import pytest

from edgecolor.errors import UsageError
from edgecolor.ledger import (
    PRIMITIVES,
    RoundLedger,
    eps_headline,
    lg,
    log_star,
    price,
    report,
    split_headline,
    three_halves_headline,
    weighted_matching_rounds,
)


def test_spot_values():
    assert price("maximal_matching", n=256) == 512
    assert price("hypergraph_mm", r=2, gamma=16, n=256) == 98304
    assert weighted_matching_rounds(Fraction(1, 2), 4, 256) == 1573380


def test_log_gamma_form_matches_gamma_form():
    assert price("hypergraph_mm", r=3, log_gamma=4, n=256) == price("hypergraph_mm", r=3, gamma=16, n=256)


def test_unknown_primitive():
    with pytest.raises(UsageError, match="unknown primitive"):
        price("teleport", n=4)


def test_missing_and_negative_parameters():
    with pytest.raises(UsageError, match="missing"):
        price("maximal_matching")
    with pytest.raises(UsageError, match="non-negative"):
        price("maximal_matching", n=-1)


@pytest.mark.parametrize("name", sorted(PRIMITIVES))
def test_every_primitive_is_positive_and_finite(name):
    params = dict(n=1024, r=3, gamma=64, eps=Fraction(1, 4), delta=16, t=3, d=5, k=8)
    rounds = price(name, **params)
    assert 0 < rounds < float("inf")


def test_log_helpers():
    assert lg(1) == 1 and lg(0) == 1 and lg(1024) == 10
    assert log_star(1) == 0 and log_star(2) == 1 and log_star(16) == 3 and log_star(65536) == 4


def test_empty_ledger():
    led = RoundLedger()
    r = report(led)
    assert r["total"] == 0 and r["depth"] == 0 and r["entries"] == 0
    assert r["within_headline"] is None


def test_single_entry():
    led = RoundLedger()
    led.charge("maximal_matching", n=256)
    r = report(led, 600.0, "demo")
    assert r["total"] == 512 and r["subtotals"] == {"maximal_matching": 512}
    assert r["counts"] == {"maximal_matching": 1}
    assert r["within_headline"] is True
    assert report(led, 500.0)["within_headline"] is False


def test_parallel_depth_is_max_work_is_sum():
    a, b = RoundLedger(), RoundLedger()
    a.charge("combine", k=3)
    b.charge("combine", k=5)
    b.charge("one_round")
    led = RoundLedger()
    led.charge("one_round")
    led.parallel([a, b])
    led.parallel([a])
    assert led.work == 1 + 3 + 6 + 3
    assert led.depth == 1 + 6 + 3
    assert report(led, 10.0)["within_headline"] is True


def test_headlines_grow_with_delta():
    n = 256
    assert eps_headline(0, Fraction(1, 2), n) == 0
    assert eps_headline(8, Fraction(1, 2), n) < eps_headline(16, Fraction(1, 2), n)
    assert eps_headline(8, Fraction(1, 4), n) > eps_headline(8, Fraction(1, 2), n)
    assert three_halves_headline(3, n) < three_halves_headline(4, n)
    assert split_headline(0, Fraction(1, 100), 8, Fraction(1, 4), n) == eps_headline(8, Fraction(1, 4), n)
    assert split_headline(2, Fraction(1, 100), 8, Fraction(1, 4), n) > eps_headline(8, Fraction(1, 4), n)
