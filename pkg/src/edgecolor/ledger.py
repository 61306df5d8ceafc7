"""Round accounting in the LOCAL model.

Every primitive is priced by the leading term of its closed-form round
bound, with unit constants and base-2 logarithms.  Log factors hidden by
soft-O notation are written out as ``log2 log2`` terms.  Terms of the form
``Gamma = Delta**r`` are carried as ``log2(Gamma)`` so they never overflow.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import UsageError


def lg(x) -> float:
    """``log2`` clamped below at 1, so degenerate parameters never zero out a bound."""
    return math.log2(max(float(x), 2.0))


def log_star(n) -> int:
    k, x = 0, float(n)
    while x > 1:
        x = math.log2(x)
        k += 1
    return k


def hypergraph_mm_rounds(r, log_gamma: float, n) -> float:
    """``r^2 * log(n*Gamma) * log n * log^4 Gamma`` with ``Gamma`` given as ``log2(Gamma)``."""
    log_gamma = max(float(log_gamma), 1.0)
    return float(r) ** 2 * (lg(n) + log_gamma) * lg(n) * log_gamma**4


def weighted_matching_rounds(eps, delta, n) -> float:
    eps = Fraction(eps)
    r = math.ceil(1 / eps)
    inv = float(1 / eps)
    return inv**2 + inv * hypergraph_mm_rounds(r, r * lg(delta), n) * lg(n) + lg(n) ** 3


def _need(params: dict, *names):
    missing = [k for k in names if k not in params]
    if missing:
        raise UsageError(f"missing parameters: {', '.join(missing)}")
    for k in names:
        if params[k] is None or (isinstance(params[k], (int, float, Fraction)) and params[k] < 0):
            raise UsageError(f"parameter {k} must be non-negative")
    return [params[k] for k in names]


def _p_maximal_matching(p):
    (n,) = _need(p, "n")
    return lg(n) ** 3


def _p_hypergraph_mm(p):
    r, n = _need(p, "r", "n")
    if "log_gamma" in p:
        log_gamma = p["log_gamma"]
    else:
        (gamma,) = _need(p, "gamma")
        log_gamma = math.log2(max(float(gamma), 1.0))
    return hypergraph_mm_rounds(r, log_gamma, n)


def _p_weighted_matching(p):
    eps, delta, n = _need(p, "eps", "delta", "n")
    return weighted_matching_rounds(eps, delta, n)


def _p_pervasive_matching(p):
    t, eps, delta, n = _need(p, "t", "eps", "delta", "n")
    eps = Fraction(eps)
    return float(t / eps) + weighted_matching_rounds(eps / 2, delta, n)


def _p_degree_split(p):
    gamma, n = _need(p, "gamma", "n")
    inv = float(1 / Fraction(gamma))
    return inv * lg(inv) * lg(n) * lg(lg(inv))


def _p_bipartite_max_matching(p):
    d, n = _need(p, "d", "n")
    r = max(d, 1) * lg(n)
    return r * hypergraph_mm_rounds(r, r * lg(d), n)


def _p_extraction(p):
    delta, n = _need(p, "delta", "n")
    r = delta * lg(n)
    return r * hypergraph_mm_rounds(r, r * lg(delta), n) + lg(n) ** 3


def _p_three_graph_coloring(p):
    (n,) = _need(p, "n")
    return lg(n) ** 3


def _p_cole_vishkin(p):
    (n,) = _need(p, "n")
    return float(log_star(n))


def _p_combine(p):
    (k,) = _need(p, "k")
    return float(k)


def _p_one_round(p):
    return 1.0


PRIMITIVES: dict[str, Callable[[dict], float]] = {
    "maximal_matching": _p_maximal_matching,
    "hypergraph_mm": _p_hypergraph_mm,
    "weighted_matching": _p_weighted_matching,
    "pervasive_matching": _p_pervasive_matching,
    "degree_split": _p_degree_split,
    "bipartite_max_matching": _p_bipartite_max_matching,
    "extraction": _p_extraction,
    "three_graph_coloring": _p_three_graph_coloring,
    "cole_vishkin": _p_cole_vishkin,
    "combine": _p_combine,
    "one_round": _p_one_round,
}


def price(primitive: str, **params) -> float:
    """Rounds for one invocation of ``primitive``.

    >>> price("maximal_matching", n=256)
    512.0
    >>> price("hypergraph_mm", r=2, gamma=16, n=256)
    98304.0
    """
    try:
        rule = PRIMITIVES[primitive]
    except KeyError:
        raise UsageError(f"unknown primitive {primitive!r}") from None
    return rule(params)


# ---------------------------------------------------------------------------
# headline bounds for whole algorithms


def eps_headline(delta, eps, n) -> float:
    """``Delta * (log n / eps^2 + M_W(eps/2))``."""
    eps = Fraction(eps)
    if delta <= 0:
        return 0.0
    return delta * (lg(n) / float(eps) ** 2 + weighted_matching_rounds(eps / 2, delta, n))


def three_halves_headline(delta, n) -> float:
    """``Delta^2 * log n * M(Delta log n, Delta^(Delta log n))``."""
    if delta <= 0:
        return 0.0
    r = delta * lg(n)
    return delta**2 * lg(n) * hypergraph_mm_rounds(r, r * lg(delta), n)


def split_headline(h, gamma, leaf_delta, leaf_eps, n) -> float:
    """``h`` splitting levels followed by parallel leaf colorings."""
    split = h * price("degree_split", gamma=gamma, n=n) if h else 0.0
    return split + eps_headline(leaf_delta, leaf_eps, n)


# ---------------------------------------------------------------------------
# the ledger


@dataclass(frozen=True)
class LedgerEntry:
    name: str
    params: tuple
    rounds: float
    group: int | None = None
    branch: int | None = None


@dataclass
class RoundLedger:
    """Append-only list of priced invocations.

    Entries recorded inside :meth:`parallel` carry a group and branch id.
    ``work`` sums every entry; ``depth`` takes the max over the branches of
    each parallel group.
    """

    entries: list[LedgerEntry] = field(default_factory=list)
    _groups: int = 0

    def charge(self, primitive: str, **params) -> float:
        rounds = price(primitive, **params)
        self.entries.append(LedgerEntry(primitive, tuple(sorted(params.items())), rounds))
        return rounds

    def parallel(self, branches: list["RoundLedger"]) -> None:
        """Merge independently built sub-ledgers that ran side by side."""
        gid = self._groups
        self._groups += 1
        for b, sub in enumerate(branches):
            for e in sub.entries:
                self.entries.append(LedgerEntry(e.name, e.params, e.rounds, gid, b))

    @property
    def work(self) -> float:
        return sum(e.rounds for e in self.entries)

    @property
    def total(self) -> float:
        return self.work

    @property
    def depth(self) -> float:
        seq = 0.0
        groups: dict[int, dict[int, float]] = defaultdict(lambda: defaultdict(float))
        for e in self.entries:
            if e.group is None:
                seq += e.rounds
            else:
                groups[e.group][e.branch] += e.rounds
        return seq + sum(max(b.values()) for b in groups.values())


def report(ledger: RoundLedger, headline: float | None = None, headline_name: str | None = None) -> dict:
    """Per-primitive subtotals, totals and the headline comparison.

    The headline is a round count, so it is compared against ``depth``:
    parallel branches cost their maximum, not their sum.  For sequential
    runs ``depth`` and ``work`` coincide.
    """
    subtotals: dict[str, float] = defaultdict(float)
    counts: dict[str, int] = defaultdict(int)
    for e in ledger.entries:
        subtotals[e.name] += e.rounds
        counts[e.name] += 1
    out = {
        "entries": len(ledger.entries),
        "subtotals": {k: subtotals[k] for k in sorted(subtotals)},
        "counts": {k: counts[k] for k in sorted(counts)},
        "total": ledger.total,
        "work": ledger.work,
        "depth": ledger.depth,
        "headline": headline_name,
        "headline_rounds": headline,
        "within_headline": None if headline is None else ledger.depth <= headline,
    }
    return out
