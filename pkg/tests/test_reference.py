import itertools
import math

import pytest
from hypothesis import given

from fsort.graph import from_forbidden_list, gen_random_forbidden
from fsort.oracle import HiddenOrder
from fsort.poset import PartialOrder, transitive_closure
from fsort.reference import (
    ALGORITHMS,
    bound_value,
    exhaustive_check,
    ground_truth,
    verify_run,
)

from conftest import graph_and_order


def test_ground_truth_complete_is_chain():
    order = HiddenOrder.from_seed(7, 1)
    gt = ground_truth(from_forbidden_list(7, []), order)
    assert gt.equals(PartialOrder.chain(order.sequence()))
    assert gt.incomparable_count() == 0


def test_ground_truth_empty_graph():
    g = from_forbidden_list(4, list(itertools.combinations(range(4), 2)))
    assert ground_truth(g, HiddenOrder.identity(4)).relation_count() == 0


def test_ground_truth_path():
    # path 0-1-2 with 0 < 1 < 2: the closure adds 0 < 2
    g = from_forbidden_list(3, [(0, 2)])
    gt = ground_truth(g, HiddenOrder.identity(3))
    assert sorted(map(tuple, gt.relations())) == [(0, 1), (0, 2), (1, 2)]


@given(graph_and_order(max_n=12))
def test_ground_truth_properties(go):
    g, order = go
    gt = ground_truth(g, order)
    us, vs = g.allowed_pairs()
    assert all(gt.comparable(u, v) for u, v in zip(us.tolist(), vs.tolist()))
    assert (transitive_closure(gt.lt) == gt.lt).all()


def test_verify_run_k4_det():
    rep = verify_run(from_forbidden_list(4, []), HiddenOrder.from_seed(4, 3), "det")
    assert rep.correct and rep.forbidden_ok
    assert rep.bound == pytest.approx(4 * 2)


def test_verify_run_empty_rand():
    g = from_forbidden_list(5, list(itertools.combinations(range(5), 2)))
    rep = verify_run(g, HiddenOrder.identity(5), "rand", seed=4)
    assert rep.probes == 0 and rep.correct


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_verify_run_sweep_64(algo):
    for s in range(3):
        g = gen_random_forbidden(64, 128, s)
        rep = verify_run(g, HiddenOrder.from_seed(64, 100 + s), algo, seed=s)
        assert rep.correct and rep.forbidden_ok


def test_verify_run_unknown_algo():
    with pytest.raises(ValueError):
        verify_run(from_forbidden_list(3, []), HiddenOrder.identity(3), "bogo")


def test_bound_formulas():
    assert bound_value("det", 128, 128) == pytest.approx(256 * 7)
    assert bound_value("rand", 100, 0) == pytest.approx(100**2 / 10 + 100)
    assert bound_value("rand", 100, 44) == pytest.approx(100**2 / 12 + 100 * math.sqrt(44))
    n = 512
    for p in (0.01, 0.1, 0.5):
        assert bound_value("randgraph", n, 0, p) == pytest.approx(min(n**1.5 * math.log(n) ** 2, p * n * n / 2))
    with pytest.raises(ValueError):
        bound_value("randgraph", 10, 0)


def test_exhaustive_n3():
    summary = exhaustive_check(3)
    # n=1: 1 graph x 1 order, n=2: 2 x 2, n=3: 8 x 6
    assert summary["instances"] == 1 + 4 + 48
    assert summary["runs"] == summary["instances"] * 8
    assert summary["failures"] == []


def test_exhaustive_refuses_large():
    with pytest.raises(ValueError):
        exhaustive_check(6)


def test_exhaustive_sampled_n6():
    summary = exhaustive_check(6, sample=30, sample_seed=1)
    assert summary["instances"] == 30 and summary["failures"] == []
