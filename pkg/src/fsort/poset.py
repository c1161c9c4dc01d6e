"""Strict partial orders as dense boolean matrices, and their closure.

``lt[u, v]`` means "u < v has been established".  The closure kernel orders
vertices topologically (Kahn, one vectorised step per level) and then, in
reverse order, ORs each vertex's bit-packed reachability row with the rows
of its direct successors.
"""

from __future__ import annotations

import json
from math import comb

import numpy as np

__all__ = [
    "ContradictionError",
    "PartialOrder",
    "topological_levels",
    "transitive_closure",
]


class ContradictionError(ValueError):
    """Relations that cannot come from a single total order (a cycle)."""


def topological_levels(lt: np.ndarray) -> list[np.ndarray]:
    """Kahn layering of the relation; raises on a cycle."""
    n = lt.shape[0]
    indeg = lt.sum(axis=0, dtype=np.int64)
    pending = np.ones(n, dtype=bool)
    levels = []
    frontier = np.flatnonzero(indeg == 0)
    placed = 0
    while frontier.size:
        levels.append(frontier)
        placed += frontier.size
        pending[frontier] = False
        indeg -= lt[frontier].sum(axis=0, dtype=np.int64)
        frontier = np.flatnonzero((indeg == 0) & pending)
    if placed != n:
        raise ContradictionError(f"relation has a cycle through {n - placed} vertices")
    return levels


def transitive_closure(lt: np.ndarray) -> np.ndarray:
    """Return the transitive closure of an acyclic relation matrix."""
    lt = np.asarray(lt, dtype=bool)
    n = lt.shape[0]
    if n == 0 or not lt.any():
        return lt.copy()
    if lt.diagonal().any():
        raise ContradictionError("relation is reflexive somewhere")
    levels = topological_levels(lt)
    packed = np.packbits(lt, axis=1)
    # the deepest level has no successors
    for level in reversed(levels[:-1]):
        for v in level.tolist():
            succ = np.flatnonzero(lt[v])
            if succ.size == 1:
                packed[v] |= packed[succ[0]]
            elif succ.size:
                packed[v] |= np.bitwise_or.reduce(packed[succ], axis=0)
    return np.unpackbits(packed, axis=1, count=n).astype(bool)


class PartialOrder:
    """Mutable strict order on ``0..n-1``."""

    def __init__(self, n: int, lt: np.ndarray | None = None) -> None:
        self.n = n
        if lt is None:
            self.lt = np.zeros((n, n), dtype=bool)
        else:
            lt = np.array(lt, dtype=bool, copy=True)
            if lt.shape != (n, n):
                raise ValueError(f"relation must be {n}x{n}, got {lt.shape}")
            if lt.diagonal().any():
                raise ContradictionError("relation is reflexive somewhere")
            if (lt & lt.T).any():
                raise ContradictionError("relation is not antisymmetric")
            self.lt = lt
        self.closed = not self.lt.any()

    @classmethod
    def chain(cls, seq) -> PartialOrder:
        """Total order listing ``seq`` smallest-first."""
        seq = list(seq)
        po = cls(len(seq))
        pos = np.empty(len(seq), dtype=np.int64)
        pos[seq] = np.arange(len(seq))
        po.lt = pos[:, None] < pos[None, :]
        po.closed = True
        return po

    def __repr__(self) -> str:
        return f"PartialOrder(n={self.n}, relations={int(self.lt.sum())}, closed={self.closed})"

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")

    def orient(self, u: int, v: int) -> PartialOrder:
        """Record ``u < v``."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError(f"cannot orient a vertex against itself ({u})")
        if self.lt[v, u]:
            raise ContradictionError(f"{u} < {v} contradicts established {v} < {u}")
        if not self.lt[u, v]:
            self.lt[u, v] = True
            self.closed = False
        return self

    def orient_pairs(self, lo, hi) -> PartialOrder:
        """Record ``lo[i] < hi[i]`` for every i."""
        lo = np.asarray(lo, dtype=np.intp)
        hi = np.asarray(hi, dtype=np.intp)
        if lo.size == 0:
            return self
        if min(lo.min(), hi.min()) < 0 or max(lo.max(), hi.max()) >= self.n:
            raise IndexError("vertex out of range")
        if (lo == hi).any():
            raise ValueError("cannot orient a vertex against itself")
        if self.lt[hi, lo].any():
            raise ContradictionError("new relations contradict established ones")
        self.lt[lo, hi] = True
        if (self.lt[hi, lo]).any():
            raise ContradictionError("new relations contradict each other")
        self.closed = False
        return self

    def merge(self, relation: np.ndarray) -> PartialOrder:
        """OR a whole relation matrix into this order."""
        relation = np.asarray(relation, dtype=bool)
        combined = self.lt | relation
        if (combined & combined.T).any():
            raise ContradictionError("merged relation is not antisymmetric")
        if not np.array_equal(combined, self.lt):
            self.lt = combined
            self.closed = False
        return self

    def close(self) -> PartialOrder:
        """Replace the relation by its transitive closure (in place)."""
        if not self.closed:
            self.lt = transitive_closure(self.lt)
            self.closed = True
        return self

    def less(self, u: int, v: int) -> bool:
        return bool(self.lt[u, v])

    def comparable(self, u: int, v: int) -> bool:
        return bool(self.lt[u, v] or self.lt[v, u])

    def comparability(self) -> np.ndarray:
        return self.lt | self.lt.T

    def incomparable_count(self) -> int:
        """Unordered pairs related in neither direction (meaningful once closed)."""
        return comb(self.n, 2) - int(np.count_nonzero(self.comparability())) // 2

    def relation_count(self) -> int:
        return int(np.count_nonzero(self.lt))

    def equals(self, other: PartialOrder) -> bool:
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        return bool(np.array_equal(self.lt, other.lt))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialOrder):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.lt, other.lt)

    def covering_matrix(self) -> np.ndarray:
        """Hasse diagram of the (closed) order: u < v with nothing in between."""
        closed = self.lt if self.closed else transitive_closure(self.lt)
        f = closed.astype(np.float32)
        return closed & ~((f @ f) > 0.5)

    def relations(self, covering: bool = False) -> list[list[int]]:
        mat = self.covering_matrix() if covering else self.lt
        us, vs = np.nonzero(mat)
        return [[u, v] for u, v in zip(us.tolist(), vs.tolist())]

    def to_json(self, covering: bool = False) -> str:
        return json.dumps(
            {
                "n": self.n,
                "kind": "covering" if covering else "full",
                "relations": self.relations(covering),
            }
        )
