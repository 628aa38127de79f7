"""``netmatch`` command line: generate, analyze, augment, kalman, sweep.

JSON results go to stdout, artifacts to files, logs to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import experiments as ex
from .dynamics import build_system, run_kalman
from .generators import ConfigError, GeneratorParams, generate
from .graph import GraphError
from .ingest import EdgeListParseError, read_edge_list_path, write_edge_list, DATA_DIR_ENV
from .matching import BRUTEFORCE_MAX_NODES, hall_ore_deficiency_bruteforce, maximum_matching
from .structural import InfeasibleError, reduce_unmatched, write_plan

log = logging.getLogger("netmatch")

EXIT_OK, EXIT_PARTIAL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
UNMATCHED_SAMPLE = 20


class CliError(Exception):
    def __init__(self, msg: str, code: int = EXIT_USAGE):
        super().__init__(msg)
        self.code = code


def _emit(obj) -> None:
    sys.stdout.write(ex.dumps_json(obj))


def _input_path(p: str) -> Path:
    path = Path(p)
    if not path.is_file():
        base = os.environ.get(DATA_DIR_ENV)
        if base and (Path(base) / p).is_file():
            return Path(base) / p
        raise CliError(f"input file not found: {p}", EXIT_IO)
    return path


def _output_path(p: str | None) -> Path | None:
    if p is None:
        return None
    path = Path(p)
    parent = path.parent if str(path.parent) else Path(".")
    if not parent.is_dir():
        raise CliError(f"output directory does not exist: {parent}", EXIT_IO)
    return path


def _load(path: Path):
    try:
        return read_edge_list_path(path)
    except EdgeListParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_IO) from exc


def _positive(name):
    def conv(s):
        v = int(s)
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be >= 1")
        return v
    return conv


def _nonneg(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def cmd_generate(args) -> int:
    out = _output_path(args.out)
    params = GeneratorParams(model=args.model, n=args.n, m=args.m, seed_graph=args.seed_graph,
                             L=args.L, L1=args.L1, L2=args.L2, rng_seed=args.seed,
                             triad=args.triad)
    try:
        g = generate(params)
    except ConfigError as exc:
        raise CliError(str(exc)) from exc
    header = [f"generated by netmatch: model={params.model.value} n={params.n} m={params.m} "
              f"seed={params.rng_seed}"]
    write_edge_list(g, out, header=header)
    _emit({"model": params.model.value, "nodes": g.node_count, "edges": g.edge_count,
           "avg_degree": g.average_degree(), "seed": params.rng_seed, "out": str(out)})
    return EXIT_OK


def cmd_analyze(args) -> int:
    doc = _load(_input_path(args.input))
    g = doc.graph
    a = ex.analyze(g)
    back = {d: o for o, d in doc.id_map.items()}
    result = {
        "nodes": a["nodes"],
        "edges": a["edges"],
        "avg_degree": a["avg_degree"],
        "deficiency": a["deficiency"],
        "unmatched_sample": [back[u] for u in a["unmatched"][:UNMATCHED_SAMPLE]],
        "clustering": a["clustering"],
        "self_loops_dropped": doc.self_loops_dropped,
        "duplicates_collapsed": doc.duplicates_collapsed,
    }
    if args.check:
        if g.node_count > BRUTEFORCE_MAX_NODES:
            log.warning("--check skipped: %d nodes exceeds the %d-node brute-force limit",
                        g.node_count, BRUTEFORCE_MAX_NODES)
            result["check"] = None
        else:
            brute = hall_ore_deficiency_bruteforce(g)
            result["check"] = {"bruteforce_deficiency": brute, "agrees": brute == a["deficiency"]}
            if brute != a["deficiency"]:
                _emit(result)
                return EXIT_PARTIAL
    _emit(result)
    return EXIT_OK


def cmd_augment(args) -> int:
    src = _input_path(args.input)
    out = _output_path(args.out)
    plan_path = _output_path(args.plan or str(out) + ".plan")
    doc = _load(src)
    g = doc.graph
    try:
        plan = reduce_unmatched(g, args.T, args.mode)
    except InfeasibleError as exc:
        raise CliError(f"{exc} (max feasible T = {exc.bound})") from exc
    write_edge_list(g, out, id_map=doc.id_map)
    with open(plan_path, "w") as fh:
        write_plan(plan, fh, doc.id_map)
    back = {d: o for o, d in doc.id_map.items()}
    summary = plan.summary()
    summary["added_edges"] = [[back[u], back[v]] for u, v in plan.added_edges]
    summary["out"] = str(out)
    summary["plan"] = str(plan_path)
    _emit(summary)
    return EXIT_OK if plan.complete else EXIT_PARTIAL


def cmd_kalman(args) -> int:
    out = _output_path(args.out)
    if args.input:
        g = _load(_input_path(args.input)).graph
    else:
        params = GeneratorParams(model=args.model, n=args.n, m=args.m, L=args.L, L1=args.L1,
                                 L2=args.L2, rng_seed=args.seed, triad=args.triad)
        try:
            g = generate(params)
        except ConfigError as exc:
            raise CliError(str(exc)) from exc
    mr = maximum_matching(g)
    measured = list(mr.unmatched_minus) or [0]
    sys_ = build_system(g, measured, args.rho, rng_seed=ex.derive_seed(args.seed, "weights"),
                        self_weights=args.self_weights)
    for node in args.drop or ():
        sys_ = sys_.without(node)
    trace = run_kalman(sys_, args.horizon, args.trials, ex.derive_seed(args.seed, "noise"))
    if out is not None:
        out.write_text(trace.to_csv())
    first, last = trace.window_means()
    _emit({"nodes": g.node_count, "deficiency": mr.deficiency, "measured": list(sys_.measured),
           "rho": args.rho, "first_window_msee": first, "final_window_msee": last,
           "bounded": trace.is_bounded(), "divergent": trace.is_divergent(),
           "out": str(out) if out else None})
    return EXIT_OK


def cmd_sweep(args) -> int:
    out_dir = Path(args.out_dir)
    if not out_dir.is_dir():
        raise CliError(f"output directory does not exist: {out_dir}", EXIT_IO)
    sizes = tuple(args.sizes) if args.sizes else None
    base = ex.SweepConfig.full_scale() if args.full_scale else ex.SweepConfig()
    cfg = ex.SweepConfig(
        sizes=sizes or base.sizes,
        trials=args.trials or base.trials,
        L=args.L, L1=args.L1, L2=args.L2,
        master_seed=args.seed, workers=args.workers, triad=args.triad)
    try:
        records = ex.run_comparison_sweep(cfg)
    except ConfigError as exc:
        raise CliError(str(exc)) from exc
    (out_dir / "sweep.csv").write_text(ex.sweep_csv(records, timing=args.timing))
    echo = {k: getattr(cfg, k) for k in cfg.__dataclass_fields__ if k != "workers"}
    summary = {"config": echo, "summary": ex.summarize_sweep(records)}
    (out_dir / "sweep_summary.json").write_text(ex.dumps_json(summary))
    _emit(summary)
    return EXIT_OK


def _add_gen_args(p: argparse.ArgumentParser, n_default: int = 25) -> None:
    p.add_argument("--model", choices=["ba", "hk"], default="ba")
    p.add_argument("--n", type=_positive("n"), default=n_default)
    p.add_argument("--m", type=_positive("m"), default=5)
    p.add_argument("--L", type=_positive("L"), default=2)
    p.add_argument("--L1", type=_positive("L1"), default=1)
    p.add_argument("--L2", type=_nonneg, default=1)
    p.add_argument("--triad", choices=["uniform", "degree"], default="uniform")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="netmatch", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="count", default=0)
    ap.add_argument("--config", metavar="FILE.json",
                    help="JSON object of option defaults for the subcommand; flags override it")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="grow a BA or HK network and write its edge list")
    _add_gen_args(p)
    p.add_argument("--seed-graph", choices=["path", "cycle", "complete"], default="path")
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--out", "-o", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="deficiency, unmatched nodes and clustering of an edge list")
    p.add_argument("input")
    p.add_argument("--check", action="store_true",
                   help=f"cross-check with the brute-force oracle (n <= {BRUTEFORCE_MAX_NODES})")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("augment", help="add T triangle-closing links inside contractions")
    p.add_argument("input")
    p.add_argument("--T", type=_nonneg, required=True)
    p.add_argument("--out", "-o", required=True)
    p.add_argument("--plan")
    p.add_argument("--mode", choices=["per_link", "once"], default="per_link")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("kalman", help="Kalman MSEE with the unmatched nodes measured")
    p.add_argument("input", nargs="?")
    _add_gen_args(p)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--rho", type=float, default=1.2)
    p.add_argument("--horizon", type=_positive("horizon"), default=200)
    p.add_argument("--trials", type=_positive("trials"), default=50)
    p.add_argument("--drop", type=int, action="append", help="remove the sensor on this node")
    p.add_argument("--self-weights", action="store_true")
    p.add_argument("--out", "-o", help="msee.csv path")
    p.set_defaults(func=cmd_kalman)

    p = sub.add_parser("sweep", help="Monte-Carlo BA vs HK comparison")
    p.add_argument("--sizes", type=_positive("size"), nargs="+")
    p.add_argument("--trials", type=_positive("trials"))
    p.add_argument("--L", type=_positive("L"), default=2)
    p.add_argument("--L1", type=_positive("L1"), default=1)
    p.add_argument("--L2", type=_nonneg, default=1)
    p.add_argument("--triad", choices=["uniform", "degree"], default="uniform")
    p.add_argument("--seed", type=_nonneg, default=ex.SweepConfig.master_seed)
    p.add_argument("--workers", type=_positive("workers"), default=1)
    p.add_argument("--paper-scale", dest="full_scale", action="store_true",
                   help="sizes 100..1200, 100 trials")
    p.add_argument("--timing", action="store_true", help="add per-trial elapsed seconds to the CSV")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_sweep)
    ap.subcommands = sub.choices
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv) -> None:
    """Load ``--config`` and install its keys as defaults of the chosen subcommand."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    pre.add_argument("-v", "--verbose", action="count")
    known, rest = pre.parse_known_args(argv)
    if not known.config or not rest or rest[0] not in ap.subcommands:
        return
    try:
        cfg = json.loads(Path(known.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        ap.exit(EXIT_IO, f"netmatch: error: cannot read config {known.config}: {exc}\n")
    sub = ap.subcommands[rest[0]]
    dests = {a.dest for a in sub._actions} - {"help", "func"}
    if not isinstance(cfg, dict):
        ap.error("config file must hold a JSON object")
    unknown = sorted(k.replace("-", "_") for k in cfg if k.replace("-", "_") not in dests)
    if unknown:
        ap.error(f"unknown {rest[0]} option(s) in config: {', '.join(unknown)}")
    for a in sub._actions:
        if a.dest in {k.replace("-", "_") for k in cfg}:
            a.required = False
    sub.set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()})


def main(argv=None) -> int:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    _apply_config(ap, argv)
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"netmatch {args.command}: error: {exc}", file=sys.stderr)
        return exc.code
    except (GraphError, OSError) as exc:
        print(f"netmatch {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
