import io
import math
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsort.graph import (
    ComparisonGraph,
    GraphFormatError,
    dumps,
    from_forbidden_list,
    gen_complete_bipartite,
    gen_gnp,
    gen_random_forbidden,
    load,
    loads,
    save,
)

from conftest import graphs


def edges(g):
    us, vs = g.allowed_pairs()
    return set(zip(us.tolist(), vs.tolist()))


def test_empty_forbidden_list_is_complete():
    g = from_forbidden_list(3, [])
    assert g.q == 0
    assert edges(g) == {(0, 1), (0, 2), (1, 2)}


def test_single_exclusion():
    g = from_forbidden_list(3, [(0, 1)])
    assert g.q == 1
    assert edges(g) == {(0, 2), (1, 2)}


@pytest.mark.parametrize(
    "pairs",
    [[(0, 1), (1, 0)], [(2, 3), (2, 3)]],
)
def test_duplicate_pair_rejected(pairs):
    with pytest.raises(ValueError, match="duplicate"):
        from_forbidden_list(4, pairs)


@pytest.mark.parametrize("pair", [(0, 4), (-1, 2), (1, 1)])
def test_bad_pairs_rejected(pair):
    with pytest.raises(ValueError):
        from_forbidden_list(4, [pair])


def test_graph_is_immutable():
    g = from_forbidden_list(3, [])
    with pytest.raises(ValueError):
        g.adj[0, 1] = False
    with pytest.raises(AttributeError):
        g.q = 5


def test_constructor_checks_symmetry_and_diagonal():
    a = np.zeros((3, 3), dtype=bool)
    a[0, 1] = True
    with pytest.raises(ValueError, match="symmetric"):
        ComparisonGraph(a)
    with pytest.raises(ValueError, match="diagonal"):
        ComparisonGraph(np.eye(3, dtype=bool))


def test_gnp_extremes():
    assert gen_gnp(5, 1.0, 3).q == 0
    assert gen_gnp(5, 0.0, 3).q == 10


def test_gnp_edge_count_near_binomial_mean():
    trials = comb(100, 2)
    sigma = math.sqrt(trials * 0.25)
    g = gen_gnp(100, 0.5, 2024)
    assert abs(g.edge_count - 2475) <= 4 * sigma


@pytest.mark.parametrize("p", [-0.1, 1.5])
def test_gnp_rejects_bad_probability(p):
    with pytest.raises(ValueError):
        gen_gnp(5, p, 0)


def test_gnp_deterministic():
    assert gen_gnp(40, 0.3, 9) == gen_gnp(40, 0.3, 9)
    assert gen_gnp(40, 0.3, 9) != gen_gnp(40, 0.3, 10)


def test_random_forbidden_extremes_and_determinism():
    assert gen_random_forbidden(6, 0, 1).q == 0
    assert gen_random_forbidden(6, 15, 1).edge_count == 0
    a = gen_random_forbidden(50, 100, 77)
    b = gen_random_forbidden(50, 100, 77)
    assert a.q == 100
    assert np.array_equal(a.adj, b.adj)
    with pytest.raises(ValueError):
        gen_random_forbidden(6, 16, 1)


@pytest.mark.parametrize("a,b,allowed,q", [(1, 1, 1, 0), (2, 2, 4, 2), (3, 5, 15, 13)])
def test_complete_bipartite(a, b, allowed, q):
    g = gen_complete_bipartite(a, b)
    assert g.n == a + b
    assert g.edge_count == allowed
    assert g.q == q == comb(a, 2) + comb(b, 2)
    side = np.arange(g.n) < a
    assert np.array_equal(g.adj, side[:, None] != side[None, :])


def test_complete_bipartite_rejects_empty_side():
    with pytest.raises(ValueError):
        gen_complete_bipartite(0, 3)


def test_save_complete_graph_has_header_only():
    assert dumps(from_forbidden_list(3, [])) == "fsort 3 0\n"


def test_save_load_roundtrip(tmp_path):
    g = gen_random_forbidden(50, 100, 5)
    path = tmp_path / "g.fsort"
    save(g, path)
    h = load(path)
    assert np.array_equal(g.adj, h.adj)
    lines = path.read_text().splitlines()
    assert lines[0] == "fsort 50 100"
    pairs = [tuple(map(int, ln.split()[1:])) for ln in lines[1:]]
    assert pairs == sorted(pairs)
    assert all(u < v for u, v in pairs)


def test_load_ignores_comments():
    g = loads("# a comment\nfsort 3 1\n# another\nf 0 2\n")
    assert g.q == 1 and not g.allowed(0, 2)


@pytest.mark.parametrize(
    "text",
    [
        "fsort 3 2\nf 0 1\n",  # header/body mismatch
        "graph 3 0\n",
        "fsort 3\n",
        "fsort 3 1\nf 0 3\n",
        "fsort 3 1\nf 1 0\n",
        "fsort 3 2\nf 0 1\nf 0 1\n",
        "fsort 3 2\nf 0 2\nf 0 1\n",
        "fsort 3 1\ne 0 1\n",
        "",
    ],
)
def test_load_rejects_malformed(text):
    with pytest.raises(GraphFormatError):
        loads(text)


def test_save_to_stream():
    buf = io.StringIO()
    save(from_forbidden_list(4, [(1, 3)]), buf)
    assert buf.getvalue() == "fsort 4 1\nf 1 3\n"


@given(graphs(max_n=14))
def test_invariants(g):
    assert np.array_equal(g.adj, g.adj.T)
    assert not g.adj.diagonal().any()
    assert g.q == comb(g.n, 2) - int(np.triu(g.adj, 1).sum())
    assert np.all(g.degree() + g.non_degree() == g.n - 1)


@given(graphs(max_n=14))
def test_load_save_identity(g):
    assert loads(dumps(g)) == g


@settings(max_examples=30)
@given(st.integers(2, 30), st.data())
def test_random_forbidden_has_exact_q(n, data):
    q = data.draw(st.integers(0, comb(n, 2)))
    g = gen_random_forbidden(n, q, data.draw(st.integers(0, 2**32)))
    assert g.q == q
    assert len(g.forbidden_pairs()) == q
