"""Ground truth and run verification.

The ground-truth order orients every allowed pair by the hidden ranks and
closes the result.  Every algorithm run is checked against it.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from math import comb

import numpy as np

from fsort.detsort import N_MIN, NodeTrace, peel_sort, sort_deterministic
from fsort.graph import ComparisonGraph, gen_random_forbidden
from fsort.oracle import ForbiddenProbeError, HiddenOrder, ProbeOracle
from fsort.poset import PartialOrder
from fsort.randsort import sort_random_graph, sort_randomized
from fsort.rng import derive_seed, make_rng

__all__ = [
    "ALGORITHMS",
    "RANDOMIZED",
    "RunReport",
    "bound_value",
    "exhaustive_check",
    "ground_truth",
    "run_algorithm",
    "verify_run",
]

ALGORITHMS = ("det", "peel", "rand", "randgraph")
RANDOMIZED = ("rand", "randgraph")
CSV_FIELDS = ("algo", "n", "q", "seed", "probes", "bound", "ratio", "correct", "ms")
EXHAUSTIVE_LIMIT = 5


def ground_truth(g: ComparisonGraph, order: HiddenOrder) -> PartialOrder:
    rank = order.rank
    lt = g.adj & (rank[:, None] < rank[None, :])
    return PartialOrder(g.n, lt).close()


def bound_value(algo: str, n: int, q: int, p: float | None = None) -> float:
    """The analytic probe bound for ``algo`` with every hidden constant set to 1."""
    if algo in ("det", "peel"):
        return (q + n) * math.log2(max(n, 2))
    if algo == "rand":
        if n == 0:
            return 0.0
        return n * n / math.sqrt(q + n) + n * math.sqrt(max(q, 1))
    if algo == "randgraph":
        if p is None:
            raise ValueError("randgraph bound needs the edge probability")
        big = n**1.5 * math.log(n) ** 2 if n > 0 else 0.0
        return min(big, p * n * n / 2)
    raise ValueError(f"unknown algorithm {algo!r}")


def default_edge_probability(g: ComparisonGraph) -> float:
    """Edge density as a stand-in for the G(n, p) parameter (1.0 with no edges)."""
    return g.density() if g.edge_count else 1.0


@dataclass
class RunReport:
    algo: str
    n: int
    q: int
    seed: int | None
    probes: int
    bound: float
    ratio: float
    correct: bool
    ms: float
    forbidden_ok: bool = True
    p: float | None = None
    error: str | None = None
    poset: PartialOrder | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in CSV_FIELDS}
        d["forbidden_ok"] = self.forbidden_ok
        if self.p is not None:
            d["p"] = self.p
        if self.error is not None:
            d["error"] = self.error
        return d

    def csv_row(self) -> list:
        return [
            self.algo,
            self.n,
            self.q,
            "" if self.seed is None else self.seed,
            self.probes,
            f"{self.bound:.6g}",
            f"{self.ratio:.6g}",
            str(self.correct).lower(),
            f"{self.ms:.3f}",
        ]


def run_algorithm(
    algo: str,
    g: ComparisonGraph,
    o: ProbeOracle,
    seed: int | None = None,
    p_in: float | None = None,
    n_min: int = N_MIN,
    trace: list[NodeTrace] | None = None,
) -> PartialOrder:
    if algo == "det":
        return sort_deterministic(g, o, n_min=n_min, trace=trace)
    if algo == "peel":
        return peel_sort(g, o)
    if algo == "rand":
        return sort_randomized(g, o, seed)
    if algo == "randgraph":
        return sort_random_graph(g, o, default_edge_probability(g) if p_in is None else p_in, seed)
    raise ValueError(f"unknown algorithm {algo!r}; expected one of {', '.join(ALGORITHMS)}")


def verify_run(
    g: ComparisonGraph,
    order: HiddenOrder,
    algo: str,
    seed: int | None = None,
    p_in: float | None = None,
    n_min: int = N_MIN,
    trace: list[NodeTrace] | None = None,
    truth: PartialOrder | None = None,
) -> RunReport:
    """Run ``algo`` with a fresh oracle and compare against the ground truth."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {', '.join(ALGORITHMS)}")
    if algo == "randgraph" and p_in is None:
        p_in = default_edge_probability(g)
    o = ProbeOracle(g, order)
    forbidden_ok, error, result = True, None, None
    t0 = time.perf_counter()
    try:
        result = run_algorithm(algo, g, o, seed=seed, p_in=p_in, n_min=n_min, trace=trace)
    except ForbiddenProbeError as exc:
        forbidden_ok, error = False, str(exc)
    ms = (time.perf_counter() - t0) * 1000.0

    if truth is None:
        truth = ground_truth(g, order)
    correct = result is not None and result.equals(truth)
    bound = bound_value(algo, g.n, g.q, p_in)
    probes = o.probe_count()
    if bound > 0:
        ratio = probes / bound
    else:
        ratio = 0.0 if probes == 0 else math.inf
    return RunReport(
        algo=algo,
        n=g.n,
        q=g.q,
        seed=seed,
        probes=probes,
        bound=bound,
        ratio=ratio,
        correct=correct,
        ms=ms,
        forbidden_ok=forbidden_ok,
        p=p_in if algo == "randgraph" else None,
        error=error,
        poset=result,
    )


def _graphs_on(n: int):
    """Every labelled graph on n vertices (bit i of the mask = i-th pair allowed)."""
    us, vs = np.triu_indices(n, 1)
    m = us.size
    for mask in range(1 << m):
        adj = np.zeros((n, n), dtype=bool)
        bits = np.array([(mask >> i) & 1 for i in range(m)], dtype=bool)
        adj[us[bits], vs[bits]] = True
        adj |= adj.T
        yield ComparisonGraph(adj)


def _instances(n_max: int, sample: int | None, seed: int):
    if sample is None:
        for n in range(1, n_max + 1):
            orders = [HiddenOrder(p) for p in itertools.permutations(range(n))]
            for g in _graphs_on(n):
                for order in orders:
                    yield g, order
    else:
        rng = make_rng(seed)
        for i in range(sample):
            q = int(rng.integers(0, comb(n_max, 2) + 1))
            g = gen_random_forbidden(n_max, q, derive_seed(seed, i, 0))
            yield g, HiddenOrder.from_seed(n_max, derive_seed(seed, i, 1))


def exhaustive_check(
    n_max: int = EXHAUSTIVE_LIMIT,
    algos=ALGORITHMS,
    seeds=(0, 1, 2),
    sample: int | None = None,
    sample_seed: int = 0,
) -> dict:
    """Check every algorithm on every labelled graph and order with up to ``n_max`` vertices.

    Beyond ``n_max = 5`` full enumeration is refused; pass ``sample`` to draw
    that many random instances on ``n_max`` vertices instead.
    """
    if n_max > EXHAUSTIVE_LIMIT and sample is None:
        raise ValueError(
            f"full enumeration is limited to n_max <= {EXHAUSTIVE_LIMIT}; pass sample=K to sample instead"
        )
    instances = runs = 0
    failures = []
    for g, order in _instances(n_max, sample, sample_seed):
        instances += 1
        truth = ground_truth(g, order)
        for algo in algos:
            for seed in seeds if algo in RANDOMIZED else (None,):
                runs += 1
                rep = verify_run(g, order, algo, seed=seed, truth=truth)
                if not (rep.correct and rep.forbidden_ok):
                    failures.append(
                        {
                            "n": g.n,
                            "forbidden": g.forbidden_pairs(),
                            "order": order.rank.tolist(),
                            "algo": algo,
                            "seed": seed,
                            "error": rep.error,
                        }
                    )
    return {"instances": instances, "runs": runs, "failures": failures}
