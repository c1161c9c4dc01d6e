"""Clique-cover preprocessing for pivot selection.

Everything here reads only the graph; no comparisons are made.  All
functions take an optional vertex subset and then work on the induced
subgraph, returning global vertex ids.  Ties always go to the lowest index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from fsort.graph import ComparisonGraph

__all__ = [
    "CliqueCover",
    "build_clique_cover",
    "greedy_clique",
    "is_clique",
    "split_R_S",
    "subgraph_stats",
]

#: multiplier of the average non-degree used for the R/S split
NON_DEGREE_FACTOR = 4


@dataclass
class CliqueCover:
    """Disjoint cliques ``pieces[i]``, all of the same size ``s``."""

    pieces: list[np.ndarray] = field(default_factory=list)

    @property
    def r(self) -> int:
        return len(self.pieces)

    @property
    def s(self) -> int:
        return int(self.pieces[0].size) if self.pieces else 0

    def vertices(self) -> np.ndarray:
        if not self.pieces:
            return np.zeros(0, dtype=np.intp)
        return np.concatenate(self.pieces)


def _as_vertices(g: ComparisonGraph, vertices) -> np.ndarray:
    if vertices is None:
        return np.arange(g.n, dtype=np.intp)
    return np.sort(np.asarray(vertices, dtype=np.intp))


def subgraph_stats(g: ComparisonGraph, vertices=None) -> tuple[int, int, np.ndarray]:
    """``(n_P, q_P, non_degree_P)`` for the subgraph induced by ``vertices``."""
    P = _as_vertices(g, vertices)
    sub = g.adj[np.ix_(P, P)]
    deg = sub.sum(axis=1)
    n_p = P.size
    q_p = comb(n_p, 2) - int(deg.sum()) // 2
    return n_p, q_p, (n_p - 1 - deg)


def split_R_S(g: ComparisonGraph, vertices=None) -> tuple[np.ndarray, np.ndarray]:
    """Split into R (non-degree above ``4q/n``) and S (the rest).

    Since the non-degrees sum to 2q, at most half the vertices can exceed
    ``4q/n``, so ``|S| >= n/2``.
    """
    P = _as_vertices(g, vertices)
    n_p, q_p, nondeg = subgraph_stats(g, P)
    if n_p == 0:
        return P, P
    # n(v) > 4q/n  <=>  n * n(v) > 4q, kept in integers
    in_r = n_p * nondeg > NON_DEGREE_FACTOR * q_p
    R, S = P[in_r], P[~in_r]
    assert 2 * S.size >= n_p, "non-degree split left fewer than half the vertices in S"
    return R, S


def greedy_clique(g: ComparisonGraph, pool, limit: int | None = None) -> np.ndarray:
    """Grow a clique by repeatedly taking the lowest candidate and keeping its neighbours.

    If every pool vertex misses at most k others in the pool, the clique has
    at least ``len(pool) / (k + 1)`` members.  Growth stops early once
    ``limit`` members are chosen.
    """
    cand = np.sort(np.asarray(pool, dtype=np.intp))
    if cand.size == 0:
        raise ValueError("greedy_clique needs a nonempty pool")
    adj = g.adj
    chosen = []
    while cand.size and (limit is None or len(chosen) < limit):
        u = int(cand[0])
        chosen.append(u)
        cand = cand[1:][adj[u, cand[1:]]]
    return np.array(chosen, dtype=np.intp)


def is_clique(g: ComparisonGraph, vertices) -> bool:
    vs = np.asarray(vertices, dtype=np.intp)
    sub = g.adj[np.ix_(vs, vs)]
    return bool(sub.sum() == vs.size * (vs.size - 1))


def target_piece_count(n: int, q: int) -> int:
    if q < n:
        return 2
    return (5 * q) // n + 1


def build_clique_cover(g: ComparisonGraph, vertices=None) -> CliqueCover:
    """Greedy cliques carved out of S, truncated to a common size.

    Aims for 2 pieces when q < n and ``floor(5q/n) + 1`` otherwise.  Each
    piece is capped at ``|S| // r`` members so a single clique cannot
    swallow the whole pool; unused vertices stay available for later pieces.
    Fewer pieces are returned if S runs out first.
    """
    P = _as_vertices(g, vertices)
    if P.size == 0:
        return CliqueCover()
    n_p, q_p, _ = subgraph_stats(g, P)
    _, S = split_R_S(g, P)
    r = target_piece_count(n_p, q_p)

    cap = max(1, S.size // r)
    cliques = []
    pool = S
    while len(cliques) < r and pool.size:
        x = greedy_clique(g, pool, cap)
        cliques.append(x)
        pool = np.setdiff1d(pool, x, assume_unique=True)

    s = min(c.size for c in cliques)
    pieces = [np.sort(c)[:s] for c in cliques]
    assert len(pieces) * s >= 1
    return CliqueCover(pieces)
