"""Probe oracle over a hidden total order.

Every distinct unordered pair is charged once; repeats come from the memo.
Probing a forbidden pair is an algorithm bug and raises immediately.
"""

from __future__ import annotations

import enum
from pathlib import Path
from typing import IO

import numpy as np

from fsort.graph import ComparisonGraph
from fsort.rng import make_rng

__all__ = [
    "Answer",
    "ForbiddenProbeError",
    "HiddenOrder",
    "ProbeOracle",
]


class ForbiddenProbeError(RuntimeError):
    """An algorithm attempted to compare a forbidden pair."""


class Answer(enum.Enum):
    LESS = "<"
    GREATER = ">"


class HiddenOrder:
    """A total order on ``0..n-1`` given as ``rank[v]``."""

    __slots__ = ("rank",)

    def __init__(self, rank) -> None:
        rank = np.asarray(rank, dtype=np.int64)
        n = rank.shape[0]
        if rank.ndim != 1 or not np.array_equal(np.sort(rank), np.arange(n)):
            raise ValueError("rank must be a permutation of 0..n-1")
        rank = rank.copy()
        rank.setflags(write=False)
        self.rank = rank

    @property
    def n(self) -> int:
        return self.rank.shape[0]

    @classmethod
    def identity(cls, n: int) -> HiddenOrder:
        return cls(np.arange(n))

    @classmethod
    def from_seed(cls, n: int, seed: int | None) -> HiddenOrder:
        return cls(make_rng(seed).permutation(n))

    @classmethod
    def from_sequence(cls, seq) -> HiddenOrder:
        """Build from a listing of vertices smallest-first, e.g. ``[2, 0, 3, 1]``."""
        seq = np.asarray(seq, dtype=np.int64)
        rank = np.empty_like(seq)
        rank[seq] = np.arange(seq.shape[0])
        return cls(rank)

    def sequence(self) -> np.ndarray:
        return np.argsort(self.rank, kind="stable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HiddenOrder):
            return NotImplemented
        return np.array_equal(self.rank, other.rank)

    def __repr__(self) -> str:
        return f"HiddenOrder({self.rank.tolist()})"

    def dumps(self) -> str:
        return " ".join(map(str, self.rank.tolist())) + "\n"

    def save(self, sink: str | Path | IO[str]) -> None:
        if isinstance(sink, (str, Path)):
            with open(sink, "w", newline="\n") as fh:
                fh.write(self.dumps())
        else:
            sink.write(self.dumps())

    @classmethod
    def load(cls, source: str | Path | IO[str]) -> HiddenOrder:
        if isinstance(source, (str, Path)):
            with open(source) as fh:
                text = fh.read()
        else:
            text = source.read()
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if len(lines) != 1:
            raise ValueError("order file must contain exactly one line of ranks")
        try:
            ranks = [int(tok) for tok in lines[0].split()]
        except ValueError:
            raise ValueError("order file contains a non-integer rank") from None
        return cls(ranks)


class ProbeOracle:
    """Answers comparisons on allowed pairs and counts distinct probes.

    ``asked`` is the symmetric matrix of pairs answered so far; ``probes``
    always equals the number of True entries above its diagonal.
    """

    def __init__(self, graph: ComparisonGraph, order: HiddenOrder) -> None:
        if graph.n != order.n:
            raise ValueError(f"graph has {graph.n} vertices but order has {order.n}")
        self.graph = graph
        self.order = order
        self.asked = np.zeros((graph.n, graph.n), dtype=bool)
        self.probes = 0
        self._adj = graph.adj
        self._rank = order.rank

    def _check(self, u: int, v: int) -> None:
        n = self.graph.n
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError(f"pair ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"cannot probe a vertex against itself ({u})")
        if not self._adj[u, v]:
            raise ForbiddenProbeError(f"pair ({u}, {v}) is forbidden")

    def probe(self, u: int, v: int) -> Answer:
        self._check(u, v)
        if not self.asked[u, v]:
            self.asked[u, v] = self.asked[v, u] = True
            self.probes += 1
        return Answer.LESS if self._rank[u] < self._rank[v] else Answer.GREATER

    def less(self, u: int, v: int) -> bool:
        """``probe(u, v) is Answer.LESS`` without the enum round-trip."""
        return self.probe(u, v) is Answer.LESS

    def probe_pairs(self, us, vs) -> np.ndarray:
        """Probe many pairs at once; returns ``rank[us] < rank[vs]`` elementwise."""
        us = np.asarray(us, dtype=np.intp)
        vs = np.asarray(vs, dtype=np.intp)
        if us.size == 0:
            return np.zeros(0, dtype=bool)
        n = self.graph.n
        if us.min() < 0 or vs.min() < 0 or us.max() >= n or vs.max() >= n:
            raise IndexError("probe pair out of range")
        if (us == vs).any():
            raise ValueError("cannot probe a vertex against itself")
        ok = self._adj[us, vs]
        if not ok.all():
            i = int(np.flatnonzero(~ok)[0])
            raise ForbiddenProbeError(f"pair ({us[i]}, {vs[i]}) is forbidden")
        fresh = ~self.asked[us, vs]
        if fresh.any():
            fu, fv = us[fresh], vs[fresh]
            self.asked[fu, fv] = True
            self.asked[fv, fu] = True
            # duplicates inside one batch are charged once
            lo, hi = np.minimum(fu, fv), np.maximum(fu, fv)
            self.probes += int(np.unique(lo * n + hi).size)
        return self._rank[us] < self._rank[vs]

    def probe_against(self, u: int, vs) -> np.ndarray:
        """Probe ``u`` against each of ``vs``; True where ``u < v``."""
        vs = np.asarray(vs, dtype=np.intp)
        return self.probe_pairs(np.full(vs.shape, u, dtype=np.intp), vs)

    def probe_count(self) -> int:
        return self.probes

    def answers(self) -> np.ndarray:
        """Relation matrix of every answer given so far: ``[u, v]`` iff probed and u < v."""
        return self.asked & (self._rank[:, None] < self._rank[None, :])
