"""Command-line surface: generate circuits, compute amplitudes, plan
contractions, run the reference simulator, report fidelity estimates,
benchmark, and export graphs.

Every run is seeded via flags (no environment configuration) and the
amplitude result JSON embeds the fully resolved configuration, so runs
are reproducible from their own output.
"""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from dataclasses import asdict, dataclass

from .circuit import Circuit, CircuitError, parse_circuit, serialize_circuit
from .elimination import Ordering, estimate_cost
from .fidelity import ErrorRates, fidelity_report
from .generator import GenParams, generate
from .graph_model import build_model, export_dot
from .oracle import amplitude_of
from .ordering import OrderingBudget, min_fill_ordering, search_ordering, vertical_ordering
from .partition import (
    AmplitudeResult,
    BudgetUnreachableError,
    CostBudget,
    FixPlan,
    run_partitioned,
    select_fix_set,
)
from .tensor import DEFAULT_MAX_RANK, RankOverflowError


@dataclass(frozen=True)
class RunConfig:
    """Resolved inputs of one amplitude run; embedded in the output JSON."""

    circuit: str | None
    rows: int | None
    cols: int | None
    depth: int | None
    gen_seed: int
    x: str
    order: str
    order_time: float
    order_restarts: int
    order_seed: int
    fix_max: int
    max_rank: int
    engine_max_rank: int
    workers: int
    format: str


def _load_circuit(args) -> Circuit:
    if args.circuit:
        with open(args.circuit, encoding="utf-8") as fh:
            return parse_circuit(fh.read())
    if args.rows is None or args.cols is None or args.depth is None:
        raise SystemExit("either --circuit or --rows/--cols/--depth is required")
    return generate(GenParams(args.rows, args.cols, args.depth, args.seed))


def _resolve_x(args, circuit: Circuit) -> str:
    x = args.x if args.x is not None else "0" * circuit.n_qubits
    if len(x) != circuit.n_qubits or any(ch not in "01" for ch in x):
        raise SystemExit(
            f"usage error: --x must be {circuit.n_qubits} bits of 0/1, got {x!r}"
        )
    return x


def _budget(cfg: RunConfig) -> OrderingBudget:
    return OrderingBudget(
        time_s=cfg.order_time,
        max_restarts=cfg.order_restarts,
        seed=cfg.order_seed,
    )


def _base_ordering(model, cfg: RunConfig) -> Ordering:
    if cfg.order == "vertical":
        return vertical_ordering(model)
    if cfg.order == "minfill":
        return min_fill_ordering(model, seed=cfg.order_seed)
    return search_ordering(model, _budget(cfg))[0]


def _make_plan(model, cfg: RunConfig) -> tuple[FixPlan, int]:
    base = _base_ordering(model, cfg)
    base_cost = estimate_cost(model, base)
    plan = select_fix_set(
        model,
        base,
        t_max=cfg.fix_max,
        budget=CostBudget(max_rank=cfg.max_rank),
        ordering_budget=_budget(cfg),
    )
    return plan, base_cost.total


def _run_pipeline(circuit: Circuit, cfg: RunConfig) -> tuple[AmplitudeResult, FixPlan]:
    model = build_model(circuit, cfg.x)
    plan, _ = _make_plan(model, cfg)
    result = run_partitioned(
        model,
        plan,
        workers=cfg.workers,
        max_rank=cfg.engine_max_rank,
        seed=cfg.order_seed,
    )
    return result, plan

def _result_payload(result: AmplitudeResult, cfg: RunConfig) -> dict:
    return {
        "amplitude": {"re": result.amplitude.real, "im": result.amplitude.imag},
        "num_subtasks": result.num_subtasks,
        "max_rank": result.max_rank,
        "est_total_cost": result.est_total_cost,
        "wall_ms": result.wall_ms,
        "config": asdict(cfg),
    }


def _emit_error(kind: str, exc: Exception, cfg: RunConfig) -> int:
    print(json.dumps({"error": {"type": kind, "message": str(exc)},
                      "config": asdict(cfg)}))
    return 1


def _config_from_args(args, circuit: Circuit) -> RunConfig:
    return RunConfig(
        circuit=args.circuit,
        rows=args.rows if args.circuit is None else circuit.rows,
        cols=args.cols if args.circuit is None else circuit.cols,
        depth=args.depth if args.circuit is None else circuit.depth,
        gen_seed=args.seed,
        x=_resolve_x(args, circuit),
        order=args.order,
        order_time=args.order_time,
        order_restarts=args.order_restarts,
        order_seed=args.order_seed,
        fix_max=args.fix_max,
        max_rank=args.max_rank,
        engine_max_rank=args.engine_max_rank,
        workers=args.workers,
        format=args.format,
    )


def cmd_generate(args) -> int:
    circuit = generate(GenParams(args.rows, args.cols, args.depth, args.seed))
    text = serialize_circuit(circuit)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_amplitude(args) -> int:
    circuit = _load_circuit(args)
    cfg = _config_from_args(args, circuit)
    try:
        result, _ = _run_pipeline(circuit, cfg)
    except RankOverflowError as e:
        return _emit_error("rank_overflow", e, cfg)
    except BudgetUnreachableError as e:
        return _emit_error("budget_unreachable", e, cfg)
    if not (math.isfinite(result.amplitude.real) and math.isfinite(result.amplitude.imag)):
        return _emit_error("non_finite", ValueError("amplitude is not finite"), cfg)
    if cfg.format == "json":
        print(json.dumps(_result_payload(result, cfg)))
    elif cfg.format == "csv":
        print("amplitude_re,amplitude_im,num_subtasks,max_rank,est_total_cost,wall_ms")
        print(
            f"{result.amplitude.real!r},{result.amplitude.imag!r},"
            f"{result.num_subtasks},{result.max_rank},{result.est_total_cost},"
            f"{result.wall_ms}"
        )
    else:
        print(f"amplitude    {result.amplitude.real} {result.amplitude.imag:+}j")
        print(f"|amplitude|2 {abs(result.amplitude) ** 2}")
        print(f"subtasks     {result.num_subtasks}")
        print(f"max rank     {result.max_rank}")
        print(f"est cost     {result.est_total_cost}")
        print(f"wall ms      {result.wall_ms:.2f}")
    return 0


def cmd_plan(args) -> int:
    circuit = _load_circuit(args)
    cfg = _config_from_args(args, circuit)
    model = build_model(circuit, cfg.x)
    try:
        plan, base_total = _make_plan(model, cfg)
    except BudgetUnreachableError as e:
        return _emit_error("budget_unreachable", e, cfg)
    print(
        json.dumps(
            {
                "fix_vars": list(plan.fix_vars),
                "num_subtasks": plan.num_subtasks,
                "post_fix_ordering": list(plan.post_fix_ordering.vars),
                "ordering_provenance": plan.post_fix_ordering.provenance,
                "est_subtask_cost": {
                    "total": plan.est_subtask_cost.total,
                    "max_rank": plan.est_subtask_cost.max_rank,
                },
                "est_total_cost": plan.est_subtask_cost.total * plan.num_subtasks,
                "base_ordering_cost": base_total,
                "config": asdict(cfg),
            }
        )
    )
    return 0


def cmd_oracle(args) -> int:
    circuit = _load_circuit(args)
    x = _resolve_x(args, circuit)
    amp = amplitude_of(circuit, x)
    print(json.dumps({"amplitude": {"re": amp.real, "im": amp.imag}, "x": x}))
    return 0


def cmd_fidelity(args) -> int:
    rates = ErrorRates.from_two_qubit_rate(args.eps)
    circuit = None
    if args.circuit:
        with open(args.circuit, encoding="utf-8") as fh:
            circuit = parse_circuit(fh.read())
        m, n, d = circuit.rows, circuit.cols, circuit.depth
    elif args.exact:
        circuit = generate(GenParams(args.rows, args.cols, args.depth, args.seed))
        m, n, d = args.rows, args.cols, args.depth
    else:
        m, n, d = args.rows, args.cols, args.depth
    report = fidelity_report(m, n, d, rates, circuit)
    print(json.dumps({**asdict(report), "eps": args.eps}))
    return 0


def cmd_export_dot(args) -> int:
    circuit = _load_circuit(args)
    x = _resolve_x(args, circuit)
    model = build_model(circuit, x)
    text = export_dot(model)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _percentile_ms(times: list[float], pct: float) -> float:
    """The ceil(pct/100 * n)-th order statistic."""
    k = max(1, math.ceil(pct / 100.0 * len(times)))
    return sorted(times)[k - 1]


def cmd_bench(args) -> int:
    grids = [int(t) for t in args.grids.split(",") if t]
    depths = [int(t) for t in args.depths.split(",") if t]
    writer = sys.stdout
    close = None
    if args.output:
        close = writer = open(args.output, "w", encoding="utf-8")
    try:
        writer.write(
            "n,d,seed,samples,ok,status,percentile_ms,mean_max_rank,mean_t,mean_est_cost\n"
        )
        for n in grids:
            for d in depths:
                times, ranks, ts, costs = [], [], [], []
                failures = []
                for s in range(args.samples):
                    seed = args.seed + s
                    circuit = generate(GenParams(n, n, d, seed))
                    cfg = RunConfig(
                        circuit=None, rows=n, cols=n, depth=d, gen_seed=seed,
                        x="0" * circuit.n_qubits, order=args.order,
                        order_time=args.order_time,
                        order_restarts=args.order_restarts,
                        order_seed=args.order_seed, fix_max=args.fix_max,
                        max_rank=args.max_rank,
                        engine_max_rank=args.engine_max_rank,
                        workers=args.workers, format="csv",
                    )
                    start = time.perf_counter()
                    try:
                        result, plan = _run_pipeline(circuit, cfg)
                    except (RankOverflowError, BudgetUnreachableError) as e:
                        failures.append((seed, type(e).__name__))
                        continue
                    times.append((time.perf_counter() - start) * 1000.0)
                    ranks.append(result.max_rank)
                    ts.append(len(plan.fix_vars))
                    costs.append(result.est_total_cost)
                if times:
                    writer.write(
                        f"{n},{d},{args.seed},{args.samples},{len(times)},ok,"
                        f"{_percentile_ms(times, args.percentile):.3f},"
                        f"{statistics.mean(ranks):.3f},{statistics.mean(ts):.3f},"
                        f"{statistics.mean(costs):.1f}\n"
                    )
                for seed, kind in failures:
                    writer.write(f"{n},{d},{seed},1,0,{kind},,,,\n")
    finally:
        if close:
            close.close()
    return 0


def _add_circuit_source(p: argparse.ArgumentParser):
    p.add_argument("--circuit", help="circuit file to load")
    p.add_argument("--rows", type=int, help="grid rows (generate on the fly)")
    p.add_argument("--cols", type=int, help="grid cols")
    p.add_argument("--depth", type=int, help="cycles after the Hadamard layer")
    p.add_argument("--seed", type=int, default=0, help="generator seed")


def _add_pipeline_flags(p: argparse.ArgumentParser):
    p.add_argument("--x", help="output bitstring, qubit 0 first (default all zeros)")
    p.add_argument(
        "--order", choices=("vertical", "minfill", "search"), default="search"
    )
    p.add_argument("--order-time", type=float, default=2.0,
                   help="ordering search time budget, seconds")
    p.add_argument("--order-restarts", type=int, default=8,
                   help="ordering search restart cap")
    p.add_argument("--order-seed", type=int, default=0)
    p.add_argument("--fix-max", type=int, default=8,
                   help="max number of variables fixed for parallelization")
    p.add_argument("--max-rank", type=int, default=27,
                   help="per-subtask rank budget")
    p.add_argument("--engine-max-rank", type=int, default=DEFAULT_MAX_RANK,
                   help="hard cap on materialized tensor rank")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv", "plain"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridamp",
        description="Single-amplitude simulator for grid quantum circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a random circuit file")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("amplitude", help="compute <x|C|0...0>")
    _add_circuit_source(p)
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_amplitude)

    p = sub.add_parser("plan", help="print the fix plan and cost estimates")
    _add_circuit_source(p)
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("oracle", help="reference state-vector amplitude")
    _add_circuit_source(p)
    p.add_argument("--x")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fidelity", help="gate counts and fidelity estimates")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--eps", type=float, default=0.005,
                   help="two-qubit Pauli error rate")
    p.add_argument("--circuit", help="count gates of this file instead")
    p.add_argument("--exact", action="store_true",
                   help="generate a circuit (--seed) for exact counts")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("bench", help="percentile-runtime sweep, CSV output")
    p.add_argument("--grids", required=True, help="comma list of n (n x n grids)")
    p.add_argument("--depths", required=True, help="comma list of depths")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--percentile", type=float, default=80.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-dot", help="write the model graph as DOT")
    _add_circuit_source(p)
    p.add_argument("--x")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CircuitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
