"""Deterministic sorting of a comparison graph.

``sort_deterministic`` is the pivot-based divide and conquer: pick an
approximate median from a clique cover, split the node into the pivot's
upper set U, lower set L and non-neighbours B, recurse on U and L, and probe
every allowed pair touching B.  Pairs split across U and L never need a
probe because the pivot separates them.  Nodes that are small or too sparse
(``n_P**2 < 200 * q_P``) probe all their allowed pairs instead.

``peel_sort`` is the simple strategy for very few forbidden pairs.
"""

from __future__ import annotations

import functools
from dataclasses import asdict, dataclass

import numpy as np

from fsort.cliques import build_clique_cover, subgraph_stats
from fsort.graph import ComparisonGraph
from fsort.oracle import ProbeOracle
from fsort.poset import PartialOrder

__all__ = [
    "NodeTrace",
    "N_MIN",
    "RECURSION_GUARD",
    "approx_median",
    "comparison_sort",
    "peel_order",
    "peel_sort",
    "sort_deterministic",
]

N_MIN = 32
RECURSION_GUARD = 200


@dataclass
class NodeTrace:
    depth: int
    n_p: int
    q_p: int
    pivot: int | None
    u: int
    l: int
    b: int
    probes: int
    leaf: bool

    def to_dict(self) -> dict:
        return asdict(self)


def comparison_sort(o: ProbeOracle, vertices) -> list[int]:
    """Sort mutually comparable vertices with the builtin merge sort."""
    key = functools.cmp_to_key(lambda a, b: -1 if o.less(a, b) else 1)
    return sorted((int(v) for v in vertices), key=key)


def _probe_all_within(g: ComparisonGraph, o: ProbeOracle, P: np.ndarray) -> None:
    sub = np.triu(g.adj[np.ix_(P, P)], 1)
    i, j = np.nonzero(sub)
    o.probe_pairs(P[i], P[j])


def _probe_all_between(g: ComparisonGraph, o: ProbeOracle, A: np.ndarray, B: np.ndarray) -> None:
    if A.size == 0 or B.size == 0:
        return
    i, j = np.nonzero(g.adj[np.ix_(A, B)])
    o.probe_pairs(A[i], B[j])


def approx_median(g: ComparisonGraph, o: ProbeOracle, vertices=None) -> int:
    """Pivot for the subgraph induced by ``vertices`` (default: all).

    Each cover piece is sorted and contributes its lower median; each median
    is probed against its allowed partners in the cover to estimate its rank
    there, and the median of those estimates wins.  With at most two pieces
    the median with the larger estimate is taken.
    """
    P = np.arange(g.n, dtype=np.intp) if vertices is None else np.sort(np.asarray(vertices, dtype=np.intp))
    if P.size == 0:
        raise ValueError("approx_median needs at least one vertex")
    if P.size == 1:
        return int(P[0])

    cover = build_clique_cover(g, P)
    medians = []
    for piece in cover.pieces:
        ordered = comparison_sort(o, piece)
        medians.append(ordered[(len(ordered) - 1) // 2])

    Y = cover.vertices()
    estimates = []
    for m in medians:
        partners = Y[(Y != m) & g.adj[m, Y]]
        above = o.probe_against(m, partners)
        estimates.append(int(partners.size - np.count_nonzero(above)))

    if cover.r >= 3:
        ranked = sorted(zip(estimates, medians))
        return ranked[(cover.r - 1) // 2][1]
    best = max(estimates)
    return min(m for est, m in zip(estimates, medians) if est == best)


def sort_deterministic(
    g: ComparisonGraph,
    o: ProbeOracle,
    n_min: int = N_MIN,
    trace: list[NodeTrace] | None = None,
    guard: int = RECURSION_GUARD,
) -> PartialOrder:
    """Recover the full induced partial order with O((q + n) log n) probes.

    A node recurses only while ``n_P**2 >= guard * q_P``; that is the regime
    where the pivot provably leaves at least ``n_P/40`` vertices on each side.
    """
    if o.graph is not g and o.graph != g:
        raise ValueError("oracle was built for a different graph")
    stack = [(np.arange(g.n, dtype=np.intp), 0)]
    while stack:
        P, depth = stack.pop()
        if P.size == 0:
            continue
        n_p, q_p, _ = subgraph_stats(g, P)
        before = o.probes

        if n_p <= n_min or n_p * n_p < guard * q_p:
            _probe_all_within(g, o, P)
            if trace is not None:
                trace.append(NodeTrace(depth, n_p, q_p, None, 0, 0, 0, o.probes - before, True))
            continue

        m = approx_median(g, o, P)
        others = P[P != m]
        nbr = g.adj[m, others]
        partners = others[nbr]
        above = o.probe_against(m, partners)
        U, L, B = partners[above], partners[~above], others[~nbr]

        # merge probes: B against the rest of the node, and inside B
        _probe_all_between(g, o, B, np.concatenate([U, L]))
        _probe_all_within(g, o, B)

        if trace is not None:
            trace.append(NodeTrace(depth, n_p, q_p, m, U.size, L.size, B.size, o.probes - before, False))
        stack.append((L, depth + 1))
        stack.append((U, depth + 1))

    return PartialOrder(g.n, o.answers()).close()


def peel_order(g: ComparisonGraph) -> tuple[list[int], np.ndarray]:
    """Vertices peeled (in peel order) and the clique that remains.

    Each step takes the lexicographically smallest non-adjacent pair among
    the remaining vertices and removes its lower endpoint.
    """
    n = g.n
    adj = g.adj
    remaining = np.ones(n, dtype=bool)
    # remaining non-neighbours of each vertex
    missing = (~adj).sum(axis=1) - 1
    peeled = []
    while True:
        cand = np.flatnonzero(remaining & (missing > 0))
        if cand.size == 0:
            break
        u = int(cand[0])
        peeled.append(u)
        remaining[u] = False
        non_nbrs = remaining & ~adj[u]
        non_nbrs[u] = False
        missing[non_nbrs] -= 1
    return peeled, np.flatnonzero(remaining)


def peel_sort(g: ComparisonGraph, o: ProbeOracle) -> PartialOrder:
    """Peel vertices off until a clique remains, sort it, then reinsert the peeled ones."""
    adj = g.adj
    peeled, clique = peel_order(g)
    placed = comparison_sort(o, clique)
    placed_arr = np.array(placed, dtype=np.intp)
    for x in reversed(peeled):
        partners = placed_arr[adj[x, placed_arr]]
        o.probe_against(x, partners)
        placed_arr = np.append(placed_arr, x)

    return PartialOrder(g.n, o.answers()).close()
