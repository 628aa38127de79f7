"""Seeded experiment drivers: BA/HK sweeps, the 25-node report, link-addition
sweeps and Kalman checks. Everything is a pure function of its config."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np
from scipy.stats import spearmanr

from .dynamics import build_system, run_kalman
from .generators import ConfigError, GeneratorParams, Model, generate
from .graph import Graph, count_triplets
from .matching import maximum_matching
from .structural import InfeasibleError, Recompute, reduce_unmatched

SWEEP_SCHEMA = "netmatch-sweep/1"
TABLE2_SCHEMA = "netmatch-table2/1"


def derive_seed(master_seed: int, *keys) -> int:
    """Stable 64-bit seed from a master seed and any tuple of str/int keys."""
    h = hashlib.blake2b(digest_size=8)
    h.update(repr((int(master_seed),) + tuple(keys)).encode())
    return int.from_bytes(h.digest(), "little")


def transitivity(g: Graph) -> float:
    tc = count_triplets(g)
    return tc.closed_triplets / tc.connected_triplets if tc.connected_triplets else 0.0


@dataclass(frozen=True)
class SweepConfig:
    sizes: tuple[int, ...] = (100, 200, 300, 400, 500, 600)
    trials: int = 25
    m: int = 5
    seed_graph: str = "path"
    L: int = 2
    L1: int = 1
    L2: int = 1
    master_seed: int = 2021
    workers: int = 1
    triad: str = "uniform"

    @classmethod
    def full_scale(cls, **kw) -> SweepConfig:
        return cls(sizes=tuple(range(100, 1201, 100)), trials=100, **kw)

    def validate(self) -> None:
        if self.L != self.L1 + self.L1 * self.L2:
            raise ConfigError(
                f"average degrees differ: BA L={self.L} vs HK L1+L1*L2={self.L1 + self.L1 * self.L2}")
        if self.trials < 1 or not self.sizes:
            raise ConfigError("need at least one size and one trial")
        if min(self.sizes) <= self.m:
            raise ConfigError("every size must exceed the seed graph size")

    def params(self, model: Model, n: int, trial: int) -> GeneratorParams:
        return GeneratorParams(model=model, n=n, m=self.m, seed_graph=self.seed_graph,
                               L=self.L, L1=self.L1, L2=self.L2, triad=self.triad,
                               rng_seed=derive_seed(self.master_seed, model.value, n, trial))


@dataclass(frozen=True)
class SweepRecord:
    model: str
    n: int
    trial: int
    deficiency: int
    global_clustering: float
    avg_degree: float
    elapsed: float = field(default=0.0, compare=False)


def analyze(g: Graph) -> dict:
    mr = maximum_matching(g)
    return {
        "nodes": g.node_count,
        "edges": g.edge_count,
        "avg_degree": g.average_degree(),
        "deficiency": mr.deficiency,
        "unmatched": list(mr.unmatched_minus),
        "clustering": transitivity(g),
    }


def _one_trial(args: tuple[SweepConfig, Model, int, int]) -> SweepRecord:
    cfg, model, n, trial = args
    t0 = time.perf_counter()
    g = generate(cfg.params(model, n, trial))
    a = analyze(g)
    return SweepRecord(model.value, n, trial, a["deficiency"], a["clustering"],
                       a["avg_degree"], time.perf_counter() - t0)


def run_comparison_sweep(cfg: SweepConfig) -> list[SweepRecord]:
    cfg.validate()
    jobs = [(cfg, model, n, t) for model in (Model.BA, Model.HK)
            for n in cfg.sizes for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            records = list(ex.map(_one_trial, jobs, chunksize=8))
    else:
        records = [_one_trial(j) for j in jobs]
    return sorted(records, key=lambda r: (r.model, r.n, r.trial))


def summarize_sweep(records: Sequence[SweepRecord]) -> dict:
    """Per-model, per-size means plus the rank-correlation trend statistics."""
    out: dict = {}
    for model in sorted({r.model for r in records}):
        rows = [r for r in records if r.model == model]
        sizes = sorted({r.n for r in rows})
        mean_def = [float(np.mean([r.deficiency for r in rows if r.n == n])) for n in sizes]
        mean_clu = [float(np.mean([r.global_clustering for r in rows if r.n == n])) for n in sizes]
        mean_deg = [float(np.mean([r.avg_degree for r in rows if r.n == n])) for n in sizes]
        out[model] = {
            "sizes": sizes,
            "mean_deficiency": mean_def,
            "mean_clustering": mean_clu,
            "mean_avg_degree": mean_deg,
            "spearman_deficiency": _spearman(sizes, mean_def),
            "spearman_clustering": _spearman(sizes, mean_clu),
        }
    return out


def _spearman(x, y) -> float:
    if len(x) < 2:
        return float("nan")
    return float(spearmanr(x, y).statistic)


def sweep_csv(records: Sequence[SweepRecord], timing: bool = False) -> str:
    buf = io.StringIO()
    buf.write(f"# {SWEEP_SCHEMA}\n")
    cols = ["model", "n", "trial", "deficiency", "global_clustering", "avg_degree"]
    if timing:
        cols.append("elapsed")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in records:
        row = [r.model, r.n, r.trial, r.deficiency, repr(r.global_clustering), repr(r.avg_degree)]
        if timing:
            row.append(f"{r.elapsed:.6f}")
        w.writerow(row)
    return buf.getvalue()


def run_table1_report(seed: int = 0, n: int = 25, m: int = 5) -> dict:
    """BA (L=2) and HK (L1=L2=1) networks on a path seed, one realization each."""
    rows = {}
    for model in (Model.BA, Model.HK):
        p = GeneratorParams(model=model, n=n, m=m, L=2, L1=1, L2=1,
                            rng_seed=derive_seed(seed, "table1", model.value))
        rows[model.value] = analyze(generate(p))
    return {"seed": seed, "n": n, "m": m, "rows": rows}


@dataclass
class Table2Row:
    T: int
    deficiency: int | None
    clustering: float | None
    added: int = 0
    shortfall: int = 0
    error: str | None = None


def run_table2_sweep(g: Graph, T_values: Sequence[int]) -> list[Table2Row]:
    """Deficiency and clustering after ``T`` per-link additions, for each T.

    The per-link procedure is deterministic and greedy, so the first ``T``
    links of the longest run are exactly the links of a fresh run with that
    ``T``; one run is replayed prefix by prefix onto fresh copies.
    """
    base = maximum_matching(g)
    work = g.copy()
    feasible = [T for T in T_values if T >= 0]
    T_max = max(feasible, default=0)
    bound = None
    try:
        plan = reduce_unmatched(work, T_max, Recompute.PER_LINK)
    except InfeasibleError as exc:
        bound = exc.bound
        plan = reduce_unmatched(work, bound, Recompute.PER_LINK)
    rows = []
    for T in T_values:
        if T < 0 or (bound is not None and T > bound):
            rows.append(Table2Row(T, None, None, error=f"T={T} infeasible; bound {bound}"))
            continue
        h = g.copy()
        for u, v in plan.added_edges[:T]:
            h.add_edge(u, v)
        mr = maximum_matching(h, warm_start=base) if T else base
        added = min(T, len(plan.added_edges))
        rows.append(Table2Row(T, mr.deficiency, transitivity(h), added, T - added))
    return rows


def table2_csv(rows: Sequence[Table2Row]) -> str:
    buf = io.StringIO()
    buf.write(f"# {TABLE2_SCHEMA}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["T", "added", "shortfall", "deficiency", "clustering", "error"])
    for r in rows:
        w.writerow([r.T, r.added, r.shortfall, "" if r.deficiency is None else r.deficiency,
                    "" if r.clustering is None else repr(r.clustering), r.error or ""])
    return buf.getvalue()


@dataclass(frozen=True)
class KalmanConfig:
    graphs: int = 20
    n: int = 25
    m: int = 5
    model: str = "ba"
    rho: float = 1.2
    horizon: int = 200
    trials: int = 50
    master_seed: int = 7


@dataclass
class KalmanCase:
    graph_seed: int
    deficiency: int
    measured: tuple[int, ...]
    dropped: int
    full_ratio: float
    full_bounded: bool
    dropped_final: float
    dropped_divergent: bool


def run_kalman_check(cfg: KalmanConfig = KalmanConfig()) -> list[KalmanCase]:
    """Measure all unmatched nodes, then the same system minus one sensor.

    Realizations without any unmatched node are skipped (nothing to drop);
    graph seeds are drawn in order until ``cfg.graphs`` usable graphs are found.
    """
    cases = []
    idx = 0
    while len(cases) < cfg.graphs:
        gseed = derive_seed(cfg.master_seed, "kalman-graph", idx)
        idx += 1
        p = GeneratorParams(model=cfg.model, n=cfg.n, m=cfg.m, L=2, L1=1, L2=1, rng_seed=gseed)
        g = generate(p)
        mr = maximum_matching(g)
        if not mr.unmatched_minus:
            continue
        measured = mr.unmatched_minus
        sys_full = build_system(g, measured, cfg.rho, rng_seed=derive_seed(gseed, "weights"))
        sim_seed = derive_seed(gseed, "noise")
        full = run_kalman(sys_full, cfg.horizon, cfg.trials, sim_seed)
        dropped = measured[0]
        part = run_kalman(sys_full.without(dropped), cfg.horizon, cfg.trials, sim_seed)
        cases.append(KalmanCase(gseed, mr.deficiency, measured, dropped, full.ratio(),
                                full.is_bounded(), part.window_means()[1], part.is_divergent()))
    return cases


def dumps_json(obj) -> str:
    if hasattr(obj, "__dataclass_fields__"):
        obj = asdict(obj)
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")
