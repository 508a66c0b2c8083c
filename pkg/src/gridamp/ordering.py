"""Elimination-ordering heuristics.

Three producers: the vertical ordering (each qubit's variables in
temporal order, qubit by qubit), greedy min-fill, and an anytime
randomized search that runs seeded min-fill restarts plus local
adjacent-transposition improvements against the step-cost sum until a
time or restart budget runs out.  The search's candidate stream is
deterministic given the seed; budgets only truncate it, so a larger
budget can never return a worse result.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .elimination import CostEstimate, Ordering, estimate_cost, simulate_cost
from .graph_model import GraphModel


@dataclass(frozen=True)
class OrderingBudget:
    """Search budget: wall-clock seconds and/or a restart cap, plus the
    seed for tie-breaking and restart randomization."""

    time_s: float | None = 60.0
    max_restarts: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.time_s is None and self.max_restarts is None:
            raise ValueError("budget needs a time limit or a restart cap")
        if self.time_s is not None and self.time_s < 0:
            raise ValueError("time budget must be >= 0")
        if self.max_restarts is not None and self.max_restarts < 1:
            raise ValueError("restart cap must be >= 1")


def vertical_ordering(g: GraphModel) -> Ordering:
    """Qubit 0's variables in creation order, then qubit 1's, and so on."""
    info = g.var_info
    vs = sorted(g.adj, key=lambda v: (info[v].qubit, info[v].cycle, v))
    return Ordering(tuple(vs), "vertical")


def fill_count(adj: dict[int, set[int]], v: int) -> int:
    """Number of edges elimination of ``v`` would add right now."""
    nbs = sorted(adj[v])
    fills = 0
    for i, u in enumerate(nbs):
        au = adj[u]
        for w in nbs[i + 1 :]:
            if w not in au:
                fills += 1
    return fills


def min_fill_ordering(g: GraphModel, seed: int = 0) -> Ordering:
    """Greedy ordering: repeatedly eliminate a vertex adding the fewest
    fill edges; ties broken by lower degree, then seeded random choice."""
    adj = {v: set(ns) for v, ns in g.adj.items()}
    rng = np.random.default_rng(seed)
    fills = {v: fill_count(adj, v) for v in adj}
    order: list[int] = []
    while adj:
        best_fill = min(fills.values())
        pool = [v for v, f in fills.items() if f == best_fill]
        best_deg = min(len(adj[v]) for v in pool)
        pool = sorted(v for v in pool if len(adj[v]) == best_deg)
        v = pool[int(rng.integers(len(pool)))] if len(pool) > 1 else pool[0]
        order.append(v)
        nbs = sorted(adj.pop(v))
        del fills[v]
        for u in nbs:
            adj[u].discard(v)
        for i, u in enumerate(nbs):
            for w in nbs[i + 1 :]:
                adj[u].add(w)
                adj[w].add(u)
        # only vertices whose neighborhood (or whose neighbors' adjacency)
        # changed can have a stale fill count
        affected = set(nbs)
        for u in nbs:
            affected.update(adj[u])
        affected &= set(adj)
        for u in affected:
            fills[u] = fill_count(adj, u)
    return Ordering(tuple(order), "min-fill")


def _cost_of(adj: dict[int, set[int]], order) -> CostEstimate:
    return simulate_cost({v: set(ns) for v, ns in adj.items()}, order)


def _local_improve(adj, vars_list, est, deadline) -> tuple[list[int], CostEstimate]:
    """First-improvement sweeps of adjacent transpositions; deterministic,
    the deadline only truncates."""
    cur = list(vars_list)
    cur_est = est
    improved = True
    while improved:
        improved = False
        for i in range(len(cur) - 1):
            if deadline is not None and time.perf_counter() >= deadline:
                return cur, cur_est
            cur[i], cur[i + 1] = cur[i + 1], cur[i]
            cand_est = _cost_of(adj, cur)
            if cand_est.total < cur_est.total:
                cur_est = cand_est
                improved = True
            else:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
    return cur, cur_est


def search_ordering(
    g: GraphModel, budget: OrderingBudget
) -> tuple[Ordering, CostEstimate]:
    """Best ordering found within the budget, with its cost estimate.

    Restart ``i`` runs min-fill with seed ``budget.seed + i`` and then
    polishes it with local moves; restart 0 therefore reproduces plain
    ``min_fill_ordering(g, budget.seed)``, so the result is never worse
    than that.  Candidates are compared by (total cost, variable tuple).
    """
    adj = {v: set(ns) for v, ns in g.adj.items()}
    deadline = (
        None if budget.time_s is None else time.perf_counter() + budget.time_s
    )
    best: tuple[int, tuple[int, ...], CostEstimate] | None = None

    def consider(vars_tuple: tuple[int, ...], est: CostEstimate):
        nonlocal best
        key = (est.total, vars_tuple)
        if best is None or key < (best[0], best[1]):
            best = (est.total, vars_tuple, est)

    i = 0
    while True:
        if i > 0:
            if budget.max_restarts is not None and i >= budget.max_restarts:
                break
            if deadline is not None and time.perf_counter() >= deadline:
                break
        cand = min_fill_ordering(g, seed=budget.seed + i)
        est = _cost_of(adj, cand.vars)
        consider(cand.vars, est)
        moved, moved_est = _local_improve(adj, list(cand.vars), est, deadline)
        consider(tuple(moved), moved_est)
        i += 1
    assert best is not None
    return Ordering(best[1], "search"), best[2]


__all__ = [
    "OrderingBudget",
    "vertical_ordering",
    "min_fill_ordering",
    "search_ordering",
    "fill_count",
    "estimate_cost",
]
