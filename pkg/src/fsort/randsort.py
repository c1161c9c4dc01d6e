"""Two-round randomised sorting.

Round one probes a random spanning subgraph (each allowed pair kept with
probability p) and closes the answers.  Round two probes whatever allowed
pairs are still incomparable.  The output is always the exact order; only
the probe count is random.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb

import numpy as np

from fsort.graph import ComparisonGraph
from fsort.oracle import ProbeOracle
from fsort.poset import PartialOrder
from fsort.rng import make_rng

__all__ = [
    "RandParams",
    "bad_pair_exponent",
    "check_Q1",
    "choose_params",
    "critical_probability",
    "sort_random_graph",
    "sort_randomized",
    "two_round_sort",
]

SAMPLING_CONSTANT = 12
RANDOM_GRAPH_CONSTANT = 3


@dataclass(frozen=True)
class RandParams:
    l: int
    p: float
    exponent: float


def bad_pair_exponent(n: int, q: int, l: int, p: float) -> float:
    """Log of the union bound on a pair of l-subsets with no sampled edge between them."""
    return 2 * l * math.log(math.e * n / l) - p * (comb(l, 2) - q)


def choose_params(n: int, q: int) -> RandParams:
    """Subset size l and sampling probability p for an (n, q) instance.

    ``l = max(2*ceil(sqrt q), ceil(sqrt n), 2)`` makes ``C(l,2) - q`` positive
    and ``p = min(1, 12 ln n / l)``; p is doubled until the union-bound
    exponent drops below ``-ln n`` or p reaches 1.
    """
    if n < 2:
        raise ValueError(f"need at least two vertices, got n={n}")
    if not 0 <= q < comb(n, 2):
        raise ValueError(f"q must lie in [0, C(n,2)) = [0, {comb(n, 2)}), got {q}")
    l = max(2 * math.isqrt(q - 1) + 2 if q else 0, math.isqrt(n - 1) + 1, 2)
    p = min(1.0, SAMPLING_CONSTANT * math.log(n) / l)
    exponent = bad_pair_exponent(n, q, l, p)
    while p < 1.0 and exponent > -math.log(n):
        p = min(1.0, 2 * p)
        exponent = bad_pair_exponent(n, q, l, p)
    return RandParams(l, p, exponent)


def two_round_sort(
    g: ComparisonGraph,
    o: ProbeOracle,
    p: float,
    seed: int | None,
    rounds: list[int] | None = None,
) -> PartialOrder:
    """Probe a p-sample of allowed pairs, close, then probe the leftovers.

    Pairs are sampled in lexicographic order from a Philox stream, so a seed
    fixes the probe set.  ``rounds`` (if given) receives the probe count of
    each round.
    """
    if o.graph is not g and o.graph != g:
        raise ValueError("oracle was built for a different graph")
    us, vs = g.allowed_pairs()
    po = PartialOrder(g.n)
    if us.size == 0:
        return po
    rng = make_rng(seed)
    keep = rng.random(us.size) < p
    start = o.probes
    o.probe_pairs(us[keep], vs[keep])
    po.merge(o.answers()).close()
    mid = o.probes

    left = ~po.comparability()[us, vs]
    o.probe_pairs(us[left], vs[left])
    po.merge(o.answers()).close()
    if rounds is not None:
        rounds.extend([mid - start, o.probes - mid])
    return po


def sort_randomized(g: ComparisonGraph, o: ProbeOracle, seed: int | None = None) -> PartialOrder:
    if g.n < 2 or g.edge_count == 0:
        return PartialOrder(g.n)
    params = choose_params(g.n, g.q)
    return two_round_sort(g, o, params.p, seed)


def critical_probability(n: int) -> float:
    """Edge density below which probing every edge is cheaper than sampling."""
    if n < 2:
        return 1.0
    return min(1.0, RANDOM_GRAPH_CONSTANT * math.log(n) / math.sqrt(n))


def sort_random_graph(
    g: ComparisonGraph, o: ProbeOracle, p_in: float, seed: int | None = None
) -> PartialOrder:
    """Sort an instance known to be drawn from G(n, p_in)."""
    if not 0.0 < p_in <= 1.0:
        raise ValueError(f"edge probability must lie in (0, 1], got {p_in}")
    p_hat = critical_probability(g.n)
    if p_in <= p_hat:
        return two_round_sort(g, o, 1.0, seed)
    return two_round_sort(g, o, p_hat / p_in, seed)


def check_Q1(h: ComparisonGraph, l: int) -> bool:
    """Every two l-subsets A, B (A = B allowed) have an edge between them.

    Only pairs ``a in A, b in B`` with ``a != b`` count.  The single case with
    no such pair at all (``l == 1`` and ``A = B``) is vacuous.  For fixed A,
    a B without an edge exists iff at least l vertices lie outside N(A).
    """
    n = h.n
    if l > n:
        raise ValueError(f"subset size {l} exceeds vertex count {n}")
    if l < 1:
        raise ValueError(f"subset size must be positive, got {l}")
    nbr_bits = [sum(1 << int(w) for w in np.flatnonzero(h.adj[v])) for v in range(n)]
    full = (1 << n) - 1
    for A in itertools.combinations(range(n), l):
        reach = 0
        for a in A:
            reach |= nbr_bits[a]
        outside = (full & ~reach).bit_count()
        if l == 1 and (full & ~reach) >> A[0] & 1:
            # drop the vacuous B = A
            outside -= 1
        if outside >= l:
            return False
    return True
