import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fsort.cliques import (
    build_clique_cover,
    greedy_clique,
    is_clique,
    split_R_S,
    subgraph_stats,
    target_piece_count,
)
from fsort.graph import from_forbidden_list, gen_random_forbidden

from conftest import graphs


def test_split_complete_graph():
    R, S = split_R_S(from_forbidden_list(6, []))
    assert R.size == 0 and S.tolist() == list(range(6))


def test_split_threshold_is_strict():
    # threshold 4*3/4 = 3; n(0) = 3 is not above it
    g = from_forbidden_list(4, [(0, 1), (0, 2), (0, 3)])
    R, S = split_R_S(g)
    assert R.size == 0


def test_split_high_non_degree_goes_to_R():
    pairs = [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (6, 7), (1, 2), (3, 4)]
    g = from_forbidden_list(8, pairs)
    assert g.q == 8
    R, S = split_R_S(g)
    assert R.tolist() == [0]


def test_greedy_complete_and_singleton():
    g = from_forbidden_list(5, [])
    assert greedy_clique(g, range(5)).tolist() == [0, 1, 2, 3, 4]
    assert greedy_clique(g, [3]).tolist() == [3]
    assert greedy_clique(g, range(5), limit=2).tolist() == [0, 1]
    with pytest.raises(ValueError):
        greedy_clique(g, [])


def test_greedy_on_path():
    # path 0-1-2: start at 0, candidates shrink to {1}
    g = from_forbidden_list(3, [(0, 2)])
    assert greedy_clique(g, [0, 1, 2]).tolist() == [0, 1]


def test_cover_of_k10_has_two_equal_pieces():
    cover = build_clique_cover(from_forbidden_list(10, []))
    assert cover.r == 2
    assert [p.size for p in cover.pieces] == [5, 5]
    assert set(cover.pieces[0]).isdisjoint(cover.pieces[1])


def test_cover_single_vertex():
    cover = build_clique_cover(from_forbidden_list(1, []))
    assert cover.r == 1 and cover.s == 1 and cover.pieces[0].tolist() == [0]


def test_cover_random_instance():
    g = gen_random_forbidden(200, 400, 31)
    assert target_piece_count(200, 400) == 11
    cover = build_clique_cover(g)
    assert 1 <= cover.r <= 11
    seen = set()
    for piece in cover.pieces:
        assert piece.size == cover.s
        assert is_clique(g, piece)
        assert seen.isdisjoint(piece.tolist())
        seen.update(piece.tolist())
    _, S = split_R_S(g)
    assert seen <= set(S.tolist())


def test_cover_on_subset_uses_induced_subgraph():
    g = gen_random_forbidden(60, 300, 2)
    P = np.arange(10, 50)
    n_p, q_p, nondeg = subgraph_stats(g, P)
    assert n_p == 40
    assert q_p == int((~g.adj[np.ix_(P, P)]).sum() - 40) // 2
    cover = build_clique_cover(g, P)
    assert set(cover.vertices().tolist()) <= set(P.tolist())
    for piece in cover.pieces:
        assert is_clique(g, piece)


@given(graphs(min_n=1, max_n=16))
def test_split_keeps_half(g):
    R, S = split_R_S(g)
    assert 2 * S.size >= g.n
    assert sorted(R.tolist() + S.tolist()) == list(range(g.n))


@given(graphs(min_n=1, max_n=16), st.data())
def test_greedy_size_bound(g, data):
    pool = data.draw(st.lists(st.integers(0, g.n - 1), min_size=1, unique=True))
    x = greedy_clique(g, pool)
    assert is_clique(g, x)
    assert set(x.tolist()) <= set(pool)
    P = np.array(sorted(pool))
    k = int((P.size - 1 - g.adj[np.ix_(P, P)].sum(axis=1)).max())
    assert x.size * (k + 1) >= P.size


@given(graphs(min_n=1, max_n=16))
def test_cover_invariants(g):
    cover = build_clique_cover(g)
    assert cover.r >= 1 and cover.s >= 1
    flat = cover.vertices().tolist()
    assert len(flat) == len(set(flat)) == cover.r * cover.s
    for piece in cover.pieces:
        assert is_clique(g, piece)
