"""Command-line surface.

Subcommands: count, density, uniformity check-pair|check-partition,
scoop, partition maint|maint3|maintx|rams, bipartition ers2, cut ers1,
phi, constants, generate, experiment run <name>.

Exit codes: 0 success, 1 expectation failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bipartition import (
    BipartitionError,
    balanced_cut_search,
    judicious_bipartition,
    phi,
    phi_inequality_check,
)
from .counting import count_cliques, count_induced
from .exact import as_fraction
from .generators import GeneratorSpec, generate
from .graph import GraphError, pair_density
from .graph_io import load_edge_list, save_edge_list
from .magnitude import Magnitude, MagnitudeError
from .partition import PartitionError, load_partition, partition_to_json
from .patterns import named_pattern
from .pipelines import (
    PipelineError,
    PipelineParams,
    refine_mixed_partition,
    sparse_dense_partition,
    sparse_equitable_partition,
    sparse_uniform_partition,
)
from .schedules import ScheduleError, feasibility_report, schedule
from .scooping import ScoopError, scoop
from .uniformity import UniformityError, UniformityParams, check_pair, check_partition

USER_ERRORS = (
    GraphError, UniformityError, PartitionError, ScoopError, PipelineError,
    BipartitionError, ScheduleError, MagnitudeError, ValueError, KeyError,
    FileNotFoundError,
)


def _vertex_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _emit(payload, output: str | None) -> None:
    text = json.dumps(payload, indent=2, default=str)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def _load_graph(args):
    if not args.input:
        raise GraphError("--input <edge-list> is required")
    g, report = load_edge_list(args.input)
    if report.duplicates_dropped or report.header_mismatch:
        print(f"load report: {report.to_json()}", file=sys.stderr)
    return g


def _params(args) -> PipelineParams:
    if getattr(args, "params", None):
        base = PipelineParams.from_file(args.params)
    else:
        base = PipelineParams()
    if getattr(args, "epsilon", None) is not None:
        base.epsilon = as_fraction(args.epsilon)
        if base.delta > base.epsilon:
            base.delta = base.epsilon / 4
    if getattr(args, "r", None) is not None:
        base.r = args.r
    if getattr(args, "seed", None) is not None:
        base.seed = args.seed
    base.__post_init__()
    return base


def _add_common(parser, epsilon=True):
    parser.add_argument("--input", help="edge-list file (p/e lines)")
    parser.add_argument("--output", help="write the JSON result here")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--params", help="pipeline parameter file (key=value lines)")
    if epsilon:
        parser.add_argument("--epsilon", help="density threshold, e.g. 0.25 or 1/4")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="equipart")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="clique or induced pattern counts")
    _add_common(p, epsilon=False)
    p.add_argument("--r", type=int, help="clique order")
    p.add_argument("--pattern", help="pattern name like K3, P4, C5, E2")

    p = sub.add_parser("density", help="cross density of a disjoint pair")
    _add_common(p, epsilon=False)
    p.add_argument("--a", required=True, help="comma-separated vertices")
    p.add_argument("--b", required=True, help="comma-separated vertices")

    p = sub.add_parser("uniformity", help="pair and partition uniformity checks")
    usub = p.add_subparsers(dest="subcommand", required=True)
    cp = usub.add_parser("check-pair")
    _add_common(cp)
    cp.add_argument("--a", required=True)
    cp.add_argument("--b", required=True)
    cp.add_argument("--exact-budget", type=int, default=16)
    cp.add_argument("--samples", type=int, default=64)
    cpt = usub.add_parser("check-partition")
    _add_common(cpt)
    cpt.add_argument("--partition", required=True, help="partition JSON file")
    cpt.add_argument("--exact-budget", type=int, default=16)
    cpt.add_argument("--samples", type=int, default=64)

    p = sub.add_parser("scoop", help="iterated minimum-edge class extraction")
    _add_common(p)
    p.add_argument("--s", type=int, required=True, help="class size")
    p.add_argument("--mode", choices=("sparse", "dense"), default="sparse")
    p.add_argument("--strategy", choices=("exact", "conditional", "sampled"),
                   default="conditional")

    p = sub.add_parser("partition", help="certified partition pipelines")
    psub = p.add_subparsers(dest="subcommand", required=True)
    for name in ("maint", "maint3", "maintx", "rams"):
        q = psub.add_parser(name)
        _add_common(q)
        q.add_argument("--r", type=int, default=None)
        if name == "maint3":
            q.add_argument("--k-min", type=int, default=2)
        if name == "maintx":
            q.add_argument("--pattern", default="K3")
        if name == "rams":
            q.add_argument("--partition", required=True,
                           help="initial partition JSON file")

    p = sub.add_parser("bipartition", help="judicious bipartition")
    bsub = p.add_subparsers(dest="subcommand", required=True)
    q = bsub.add_parser("ers2")
    _add_common(q)
    q.add_argument("--r", type=int, default=3)

    p = sub.add_parser("cut", help="balanced cut search")
    csub = p.add_subparsers(dest="subcommand", required=True)
    q = csub.add_parser("ers1")
    _add_common(q)
    q.add_argument("--r", type=int, default=3)
    q.add_argument("--restarts", type=int, default=16)

    p = sub.add_parser("phi", help="balanced edge-spread functional")
    _add_common(p, epsilon=False)
    p.add_argument("--k", type=int, help="subset size (omit with --check-inequality)")
    p.add_argument("--check-inequality", action="store_true")

    p = sub.add_parser("constants", help="theorem constant schedules")
    p.add_argument("--theorem", required=True,
                   choices=("maint", "maint3", "maint2", "rams", "maintx", "ers2"))
    p.add_argument("--epsilon", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--c", default=None, help="ambient density for ers2")
    p.add_argument("--n", type=int, default=None,
                   help="also report feasibility at this order")
    p.add_argument("--output")

    p = sub.add_parser("generate", help="deterministic graph generators")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--sizes", help="comma-separated part sizes")
    p.add_argument("--parts", type=int)
    p.add_argument("--factor", type=int)
    p.add_argument("--base", help="edge-list file for blowup base")
    p.add_argument("--path", help="edge-list file for from_file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)

    p = sub.add_parser("experiment", help="named experiment scenarios")
    esub = p.add_subparsers(dest="subcommand", required=True)
    q = esub.add_parser("run")
    q.add_argument("name")
    q.add_argument("--config", help="JSON config file")
    q.add_argument("--output", help="directory for the JSON + CSV report")

    return top


def _cmd_count(args) -> int:
    g = _load_graph(args)
    if (args.r is None) == (args.pattern is None):
        raise GraphError("give exactly one of --r or --pattern")
    if args.r is not None:
        value = count_cliques(g, args.r)
        payload = {"n": g.n, "m": g.m, "r": args.r, "count": value}
    else:
        pat = named_pattern(args.pattern)
        payload = {"n": g.n, "m": g.m, "pattern": args.pattern,
                   "count": count_induced(g, pat)}
    _emit(payload, args.output)
    return 0


def _cmd_density(args) -> int:
    g = _load_graph(args)
    a, b = _vertex_list(args.a), _vertex_list(args.b)
    d = pair_density(g, a, b)
    _emit({"a": a, "b": b, "density": str(d), "value": float(d)}, args.output)
    return 0


def _cmd_uniformity(args) -> int:
    g = _load_graph(args)
    params = UniformityParams(
        as_fraction(args.epsilon or "0.25"),
        exact_budget=args.exact_budget,
        sample_count=args.samples,
        seed=args.seed or 0,
    )
    if args.subcommand == "check-pair":
        verdict = check_pair(g, _vertex_list(args.a), _vertex_list(args.b), params)
        _emit(verdict.to_json(), args.output)
        return 0
    partition = load_partition(args.partition)
    report = check_partition(g, partition, params)
    _emit(report.to_json(), args.output)
    return 0 if report.passed else 1


def _cmd_scoop(args) -> int:
    g = _load_graph(args)
    res = scoop(
        g, range(g.n), args.s, as_fraction(args.epsilon or "0.25"),
        mode=args.mode, strategy=args.strategy, seed=args.seed or 0,
    )
    payload = partition_to_json(
        res.partition, res.certificate,
        "complete" if res.complete else "incomplete", res.seed,
    )
    payload["precondition_held"] = res.precondition_held
    _emit(payload, args.output)
    return 0 if res.complete else 1


def _cmd_partition(args) -> int:
    g = _load_graph(args)
    params = _params(args)
    eps = params.epsilon
    r = params.r
    if args.subcommand == "maint":
        result = sparse_equitable_partition(g, r, eps, params)
    elif args.subcommand == "maint3":
        result = sparse_uniform_partition(g, r, eps, args.k_min, params)
    elif args.subcommand == "maintx":
        params.mode = "sparse_or_dense"
        result = sparse_dense_partition(g, args.pattern, eps, params)
    else:
        initial = load_partition(args.partition)
        result = refine_mixed_partition(g, initial, r, eps, params)
    _emit(result.to_json(), args.output)
    return 0 if result.complete else 1


def _cmd_bipartition(args) -> int:
    g = _load_graph(args)
    params = _params(args)
    res = judicious_bipartition(g, args.r, params.epsilon, params)
    _emit(res.to_json(), args.output)
    return 0 if res.status == "complete" else 1


def _cmd_cut(args) -> int:
    g = _load_graph(args)
    params = _params(args)
    res = balanced_cut_search(g, params, restarts=args.restarts)
    _emit(res.to_json(), args.output)
    return 0


def _cmd_phi(args) -> int:
    g = _load_graph(args)
    if args.check_inequality:
        report = phi_inequality_check(g)
        _emit(report.to_json(), args.output)
        return 0 if report.passed else 1
    if args.k is None:
        raise GraphError("give --k or --check-inequality")
    res = phi(g, args.k, seed=args.seed or 0)
    _emit(res.to_json(), args.output)
    return 0


def _cmd_constants(args) -> int:
    sched = schedule(args.theorem, as_fraction(args.epsilon), args.r,
                     k=args.k, c=as_fraction(args.c) if args.c else None)
    payload = {
        name: (value.to_json() if isinstance(value, Magnitude) else value)
        for name, value in sched.items()
        if value is not None
    }
    if args.n is not None:
        payload["feasibility"] = feasibility_report(
            args.theorem, as_fraction(args.epsilon), args.r, args.n,
            k=args.k, c=as_fraction(args.c) if args.c else None,
        ).to_json()
    _emit(payload, args.output)
    return 0


def _cmd_generate(args) -> int:
    params = {}
    if args.n is not None:
        params["n"] = args.n
    if args.p is not None:
        params["p"] = args.p
    if args.m is not None:
        params["m"] = args.m
    if args.sizes:
        params["sizes"] = [int(x) for x in args.sizes.split(",")]
    if args.parts is not None:
        params["parts"] = args.parts
    if args.factor is not None:
        params["factor"] = args.factor
    if args.base:
        base, _ = load_edge_list(args.base)
        params["base"] = base
    if args.path:
        params["path"] = args.path
    g = generate(GeneratorSpec(args.kind, params, seed=args.seed))
    save_edge_list(g, args.output)
    print(f"wrote {args.output}: n={g.n} m={g.m}")
    return 0


def _cmd_experiment(args) -> int:
    from .experiments import run_scenario

    config = json.loads(Path(args.config).read_text()) if args.config else {}
    report = run_scenario(args.name, config)
    if args.output:
        report.write(args.output)
    print(json.dumps(
        {"scenario": report.scenario, "passed": report.passed,
         "expectations": report.expectations, "failures": report.failures,
         "runtime_ms": report.runtime_ms},
        indent=2,
    ))
    return 0 if report.passed else 1


_COMMANDS = {
    "count": _cmd_count,
    "density": _cmd_density,
    "uniformity": _cmd_uniformity,
    "scoop": _cmd_scoop,
    "partition": _cmd_partition,
    "bipartition": _cmd_bipartition,
    "cut": _cmd_cut,
    "phi": _cmd_phi,
    "constants": _cmd_constants,
    "generate": _cmd_generate,
    "experiment": _cmd_experiment,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
