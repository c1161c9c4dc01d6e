"""Comparison graphs: which pairs may be compared, which are forbidden.

Vertices are the dense integers ``0..n-1``.  Allowed pairs are stored as a
symmetric boolean adjacency matrix with a false diagonal; everything off the
diagonal that is not allowed is a forbidden pair.

Text format (``.fsort``)::

    fsort <n> <q>
    f <u> <v>          # q lines, u < v, ascending lexicographic order

Lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import io
from math import comb
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from fsort.rng import make_rng

__all__ = [
    "ComparisonGraph",
    "GraphFormatError",
    "from_forbidden_list",
    "gen_gnp",
    "gen_random_forbidden",
    "gen_complete_bipartite",
    "save",
    "load",
    "dumps",
    "loads",
]


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed."""


class ComparisonGraph:
    """Immutable comparison graph backed by a dense adjacency matrix.

    ``adj[u, v]`` is True iff ``u`` and ``v`` may be compared.
    """

    __slots__ = ("n", "adj", "q")

    def __init__(self, adj: np.ndarray) -> None:
        adj = np.array(adj, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {adj.shape}")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise ValueError("adjacency diagonal must be false")
        adj.setflags(write=False)
        n = adj.shape[0]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "q", comb(n, 2) - int(adj.sum()) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("ComparisonGraph is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComparisonGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj)

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self.adj).tobytes()))

    def __repr__(self) -> str:
        return f"ComparisonGraph(n={self.n}, q={self.q})"

    @property
    def edge_count(self) -> int:
        return comb(self.n, 2) - self.q

    def degree(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def non_degree(self) -> np.ndarray:
        """n(v) = n - 1 - d(v) for every vertex."""
        return self.n - 1 - self.degree()

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[v])

    def allowed(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def allowed_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """Allowed pairs ``(u, v)`` with ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return us, vs

    def forbidden_pairs(self) -> list[tuple[int, int]]:
        mask = np.triu(~self.adj, 1)
        us, vs = np.nonzero(mask)
        return list(zip(us.tolist(), vs.tolist()))

    def density(self) -> float:
        total = comb(self.n, 2)
        return self.edge_count / total if total else 0.0


def _pair_index_to_uv(n: int, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    us, vs = np.triu_indices(n, 1)
    return us[idx], vs[idx]


def from_forbidden_list(n: int, pairs: Iterable[tuple[int, int]]) -> ComparisonGraph:
    """Complete graph on ``n`` vertices minus the given forbidden pairs."""
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    adj = ~np.eye(n, dtype=bool)
    seen: set[tuple[int, int]] = set()
    for u, v in pairs:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"pair ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-pair ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate forbidden pair {key}")
        seen.add(key)
        adj[u, v] = adj[v, u] = False
    return ComparisonGraph(adj)


def gen_gnp(n: int, p: float, seed: int | None = None) -> ComparisonGraph:
    """Erdos-Renyi G(n, p): each pair allowed independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = make_rng(seed)
    keep = rng.random(comb(n, 2)) < p
    adj = np.zeros((n, n), dtype=bool)
    us, vs = np.triu_indices(n, 1)
    adj[us[keep], vs[keep]] = True
    adj |= adj.T
    return ComparisonGraph(adj)


def gen_random_forbidden(n: int, q: int, seed: int | None = None) -> ComparisonGraph:
    """Complete graph with exactly ``q`` forbidden pairs chosen uniformly."""
    total = comb(n, 2)
    if not 0 <= q <= total:
        raise ValueError(f"q must lie in [0, C(n,2)={total}], got {q}")
    rng = make_rng(seed)
    idx = rng.choice(total, size=q, replace=False)
    adj = ~np.eye(n, dtype=bool)
    us, vs = _pair_index_to_uv(n, idx)
    adj[us, vs] = False
    adj[vs, us] = False
    return ComparisonGraph(adj)


def gen_complete_bipartite(a: int, b: int) -> ComparisonGraph:
    """K(a, b): vertices ``0..a-1`` on one side, ``a..a+b-1`` on the other."""
    if a < 1 or b < 1:
        raise ValueError(f"both sides need at least one vertex, got ({a}, {b})")
    n = a + b
    side = np.arange(n) < a
    adj = side[:, None] != side[None, :]
    return ComparisonGraph(adj)


def dumps(g: ComparisonGraph) -> str:
    lines = [f"fsort {g.n} {g.q}"]
    lines.extend(f"f {u} {v}" for u, v in g.forbidden_pairs())
    return "\n".join(lines) + "\n"


def save(g: ComparisonGraph, sink: str | Path | IO[str]) -> None:
    text = dumps(g)
    if isinstance(sink, (str, Path)):
        with open(sink, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sink.write(text)


def loads(text: str) -> ComparisonGraph:
    return load(io.StringIO(text))


def load(source: str | Path | IO[str]) -> ComparisonGraph:
    """Parse a graph file; raises :class:`GraphFormatError` on any defect."""
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            raw = fh.read()
    else:
        raw = source.read()

    lines = [ln.strip() for ln in raw.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphFormatError("empty graph file")

    header = lines[0].split()
    if len(header) != 3 or header[0] != "fsort":
        raise GraphFormatError(f"malformed header: {lines[0]!r}")
    try:
        n, q = int(header[1]), int(header[2])
    except ValueError:
        raise GraphFormatError(f"malformed header: {lines[0]!r}") from None
    if n < 0 or q < 0 or q > comb(n, 2):
        raise GraphFormatError(f"header values out of range: n={n}, q={q}")

    body = lines[1:]
    if len(body) != q:
        raise GraphFormatError(f"header declares q={q} but file lists {len(body)} pairs")

    pairs = []
    prev = None
    for ln in body:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "f":
            raise GraphFormatError(f"malformed pair line: {ln!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphFormatError(f"malformed pair line: {ln!r}") from None
        if not (0 <= u < v < n):
            raise GraphFormatError(f"pair out of range or not u < v: {ln!r}")
        if prev is not None and (u, v) <= prev:
            if (u, v) == prev:
                raise GraphFormatError(f"duplicate pair: {ln!r}")
            raise GraphFormatError(f"pairs not in ascending order at {ln!r}")
        prev = (u, v)
        pairs.append((u, v))
    return from_forbidden_list(n, pairs)
