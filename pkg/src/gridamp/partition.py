"""Parallelization by fixing variable values.

Fixing a variable slices every factor at the chosen bit and deletes the
vertex with its edges; no new tensor appears.  Fixing t variables splits
the amplitude sum into 2^t independent subtasks that contract the same
reduced graph under the same ordering and are summed at the end.  The
fix set is chosen greedily against the estimated cost of the base
ordering; the reduced graph then gets a fresh ordering search.

Subtask summation uses a fixed-shape binary reduction tree over the
subtask index, so the amplitude is bit-identical for any worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .elimination import CostEstimate, Ordering, contract, simulate_cost
from .graph_model import GraphModel
from .ordering import OrderingBudget, search_ordering
from .tensor import DEFAULT_MAX_RANK, RankOverflowError, VarId


class BudgetUnreachableError(RuntimeError):
    """The fix-set cap was hit with the subtask cost still over budget."""

    def __init__(self, t: int, estimate: CostEstimate, budget: "CostBudget"):
        self.t = t
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"after fixing {t} variables the subtask still needs rank "
            f"{estimate.max_rank} / cost {estimate.total} (budget {budget})"
        )


@dataclass(frozen=True)
class CostBudget:
    """Per-subtask budget: a maximum post-summation rank and optionally a
    ceiling on the total step-cost sum."""

    max_rank: int | None = 27
    total_cost: int | None = None

    def satisfied_by(self, est: CostEstimate) -> bool:
        if self.max_rank is not None and est.max_rank > self.max_rank:
            return False
        if self.total_cost is not None and est.total > self.total_cost:
            return False
        return True


@dataclass(frozen=True)
class FixPlan:
    """Variables to parallelize over, plus the ordering and estimated cost
    of each of the 2^t reduced subtasks."""

    fix_vars: tuple[VarId, ...]
    post_fix_ordering: Ordering
    est_subtask_cost: CostEstimate

    @property
    def num_subtasks(self) -> int:
        return 1 << len(self.fix_vars)


@dataclass(frozen=True)
class AmplitudeResult:
    amplitude: complex
    num_subtasks: int
    max_rank: int
    est_total_cost: int
    wall_ms: float
    seed: int | None = None
    ordering_provenance: str = "user"


def fix_variable(g: GraphModel, v: VarId, bit: int) -> GraphModel:
    """New model with ``v`` fixed to ``bit``; factors sliced, vertex and
    its edges removed, assignment recorded."""
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit}")
    out = g.clone()
    out._fix(v, bit)
    return out


def select_fix_set(
    g: GraphModel,
    base: Ordering,
    t_max: int,
    budget: CostBudget,
    *,
    ordering_budget: OrderingBudget | None = None,
    allow_over_budget: bool = False,
    shortlist: int | None = None,
) -> FixPlan:
    """Greedily pick variables to fix until the subtask cost fits.

    Each step scores every remaining vertex (or a highest-degree
    ``shortlist``) by the cost of the reduced graph under ``base``
    restricted to the survivors, and keeps the minimizer (ties to the
    lower id).  Afterwards the reduced graph is re-ordered by
    ``search_ordering`` and the plan carries that ordering's estimate.

    Raises :class:`BudgetUnreachableError` when ``t_max`` fixes leave the
    estimate over budget, unless ``allow_over_budget`` is set.
    """
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    adj = {v: set(ns) for v, ns in g.adj.items()}
    remaining = list(base.restrict(adj).vars)
    if set(remaining) != set(adj):
        raise ValueError("base ordering does not cover the model's variables")
    current = simulate_cost({v: set(ns) for v, ns in adj.items()}, remaining)
    fix_vars: list[VarId] = []
    while not budget.satisfied_by(current) and len(fix_vars) < t_max:
        if shortlist is not None:
            pool = sorted(adj, key=lambda v: (-len(adj[v]), v))[:shortlist]
            pool = sorted(pool)
        else:
            pool = sorted(adj)
        best_v = None
        best_est = None
        for v in pool:
            reduced = {u: ns - {v} for u, ns in adj.items() if u != v}
            order = [u for u in remaining if u != v]
            est = simulate_cost(reduced, order)
            if best_est is None or est.total < best_est.total:
                best_v, best_est = v, est
        assert best_v is not None and best_est is not None
        fix_vars.append(best_v)
        nbs = adj.pop(best_v)
        for u in nbs:
            adj[u].discard(best_v)
        remaining = [u for u in remaining if u != best_v]
        current = best_est
    if not budget.satisfied_by(current) and not allow_over_budget:
        raise BudgetUnreachableError(len(fix_vars), current, budget)
    if not fix_vars:
        # nothing was removed; a second ordering search would just re-rank
        # the same graph, so the base ordering and its cost stand
        return FixPlan((), Ordering(tuple(remaining), base.provenance), current)
    reduced_model = g.clone()
    for v in fix_vars:
        reduced_model._fix(v, 0)  # bit irrelevant: only structure matters here
    if reduced_model.adj:
        if ordering_budget is None:
            ordering_budget = OrderingBudget(time_s=None, max_restarts=4)
        post, est = search_ordering(reduced_model, ordering_budget)
    else:
        post, est = Ordering((), "search"), CostEstimate((), 0, 0)
    return FixPlan(tuple(fix_vars), post, est)


def _tree_sum(values: list[complex]) -> complex:
    """Fixed-shape pairwise reduction; independent of completion order."""
    if not values:
        return 0.0 + 0.0j
    level = list(values)
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level), 2):
            if i + 1 < len(level):
                nxt.append(level[i] + level[i + 1])
            else:
                nxt.append(level[i])
        level = nxt
    return level[0]


def run_partitioned(
    g: GraphModel,
    plan: FixPlan,
    workers: int = 1,
    max_rank: int = DEFAULT_MAX_RANK,
    seed: int | None = None,
) -> AmplitudeResult:
    """Contract all 2^t slices of the model and sum them.

    Subtask i assigns the bits of i to ``plan.fix_vars`` with the first
    selected variable as the most significant bit.  Each worker owns a
    clone of the model; the final sum is the fixed reduction tree, so the
    amplitude does not depend on ``workers``.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    t = len(plan.fix_vars)
    start = time.perf_counter()

    def subtask(i: int) -> complex:
        m = g.clone()
        for j, v in enumerate(plan.fix_vars):
            bit = (i >> (t - 1 - j)) & 1
            m._fix(v, bit)
        try:
            return contract(m, plan.post_fix_ordering, max_rank=max_rank)
        except RankOverflowError as e:
            bits = format(i, f"0{t}b") if t else ""
            raise RankOverflowError(
                e.variables, context=f"subtask {i} (assignment {bits!r})"
            ) from None

    indices = range(plan.num_subtasks)
    if workers == 1:
        parts = [subtask(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(subtask, indices))
    amplitude = _tree_sum(parts)
    wall_ms = (time.perf_counter() - start) * 1000.0
    return AmplitudeResult(
        amplitude=amplitude,
        num_subtasks=plan.num_subtasks,
        max_rank=plan.est_subtask_cost.max_rank,
        est_total_cost=plan.est_subtask_cost.total * plan.num_subtasks,
        wall_ms=wall_ms,
        seed=seed,
        ordering_provenance=plan.post_fix_ordering.provenance,
    )
