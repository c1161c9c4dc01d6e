from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from fsort.graph import ComparisonGraph, from_forbidden_list
from fsort.oracle import HiddenOrder


def dfs_reachability(n: int, edges) -> np.ndarray:
    """Per-source iterative DFS over an edge list; the closure oracle."""
    succ = [[] for _ in range(n)]
    for u, v in edges:
        succ[u].append(v)
    reach = np.zeros((n, n), dtype=bool)
    for s in range(n):
        seen = set()
        stack = list(succ[s])
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(succ[v])
        reach[s, list(seen)] = True
    return reach


def brute_Q1(adj: np.ndarray, l: int) -> bool:
    """Literal double loop over ordered pairs of l-subsets."""
    n = adj.shape[0]
    subsets = list(itertools.combinations(range(n), l))
    for A in subsets:
        for B in subsets:
            candidates = [(a, b) for a in A for b in B if a != b]
            if not candidates:
                continue
            if not any(adj[a, b] for a, b in candidates):
                return False
    return True


@st.composite
def graphs(draw, min_n=0, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_forbidden_list(n, [pr for pr, drop in zip(pairs, mask) if drop])


@st.composite
def graph_and_order(draw, min_n=0, max_n=12):
    g = draw(graphs(min_n, max_n))
    perm = draw(st.permutations(list(range(g.n))))
    return g, HiddenOrder(perm)


@pytest.fixture
def k4() -> ComparisonGraph:
    return from_forbidden_list(4, [])


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report(capsys):
    """Record one pass/fail line for an acceptance criterion and echo it live."""

    def emit(name: str, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print(f"\n{line}")
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
