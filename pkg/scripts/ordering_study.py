#!/usr/bin/env python3
"""Compare elimination-ordering heuristics over a batch of random circuits.

For each seed: build the model, price the vertical ordering, greedy
min-fill, and the anytime search, then report per-circuit numbers and
overall win rates.
"""

from __future__ import annotations

import argparse

from gridamp import (
    GenParams,
    OrderingBudget,
    build_model,
    estimate_cost,
    generate,
    min_fill_ordering,
    search_ordering,
    vertical_ordering,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=5, help="n for an n x n grid")
    ap.add_argument("--depth", type=int, default=20)
    ap.add_argument("--circuits", type=int, default=50)
    ap.add_argument("--budget", type=float, default=5.0, help="search seconds")
    ap.add_argument("--restarts", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    budget = OrderingBudget(
        time_s=args.budget, max_restarts=args.restarts, seed=args.seed
    )
    cost_wins = rank_wins = 0
    print("seed  vars  vertical(cost,rank)  minfill(cost,rank)  search(cost,rank)")
    for s in range(args.seed, args.seed + args.circuits):
        circuit = generate(GenParams(args.grid, args.grid, args.depth, seed=s))
        model = build_model(circuit, "0" * circuit.n_qubits)
        vert = estimate_cost(model, vertical_ordering(model))
        mf = estimate_cost(model, min_fill_ordering(model, seed=args.seed))
        _, srch = search_ordering(model, budget)
        cost_wins += srch.total <= vert.total
        rank_wins += mf.max_rank <= vert.max_rank
        print(
            f"{s:4d}  {len(model.vertices):4d}"
            f"  ({vert.total:>10d},{vert.max_rank:3d})"
            f"  ({mf.total:>10d},{mf.max_rank:3d})"
            f"  ({srch.total:>10d},{srch.max_rank:3d})"
        )
    n = args.circuits
    print(f"\nsearch cost <= vertical cost: {cost_wins}/{n} ({100 * cost_wins / n:.0f}%)")
    print(f"min-fill rank <= vertical rank: {rank_wins}/{n} ({100 * rank_wins / n:.0f}%)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
