"""Monte-Carlo sweeps comparing BA and HK networks of equal size and edge count."""
import math
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .generators import GeneratorParams, generate
from .graph import clustering
from .matching import unmatched_count

MODELS = ("BA", "HK")

RECORD_FIELDS = ("model", "n", "trial", "seed", "edges", "transitivity",
                 "mean_local", "unmatched", "wall_time_s")
SUMMARY_FIELDS = ("model", "n", "mean_transitivity", "sd_transitivity", "mean_unmatched",
                  "sd_unmatched", "min_unmatched", "max_unmatched")


@dataclass(frozen=True)
class ExperimentConfig:
    sizes: tuple = tuple(range(100, 1501, 100))
    iterations: int = 50
    m: int = 4
    p: float = 0.5
    m0: int | None = None
    base_seed: int = 0
    models: tuple = MODELS

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(self, "models", tuple(m.upper() for m in self.models))
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if not self.sizes:
            raise ValueError("sizes must be non-empty")
        m0 = self.m + 1 if self.m0 is None else self.m0
        if min(self.sizes) <= m0:
            raise ValueError(f"every size must exceed m0={m0}")
        unknown = set(self.models) - set(MODELS)
        if unknown or not self.models:
            raise ValueError(f"models must be a non-empty subset of {MODELS}, got {self.models}")


PAPER_CONFIG = ExperimentConfig()
DESK_CONFIG = ExperimentConfig(sizes=(100, 300, 500), iterations=30)


@dataclass(frozen=True)
class ExperimentRecord:
    model: str
    n: int
    trial: int
    seed: int
    edges: int
    transitivity: float
    mean_local: float
    unmatched: int
    wall_time_s: float = field(compare=False)


def trial_seed(base_seed, model, n, trial):
    """Deterministic per-cell seed; independent streams for distinct cells."""
    ss = np.random.SeedSequence(entropy=base_seed, spawn_key=(MODELS.index(model), n, trial))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def cells(cfg):
    """All ``(model, n, trial)`` cells in output order."""
    return [(model, n, t) for model in cfg.models for n in cfg.sizes for t in range(cfg.iterations)]


def run_cell(cfg, model, n, trial):
    seed = trial_seed(cfg.base_seed, model, n, trial)
    start = time.perf_counter()
    params = GeneratorParams(n=n, m=cfg.m, m0=cfg.m0, p=cfg.p if model == "HK" else 0.0, seed=seed)
    g = generate(model, params)
    report = clustering(g)
    unmatched = unmatched_count(g)
    return ExperimentRecord(model, n, trial, seed, g.edge_count, report.global_transitivity,
                            report.mean_local, unmatched, time.perf_counter() - start)


def _run_cell_args(args):
    return run_cell(*args)


def worker_count():
    env = os.environ.get("NETMATCH_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def iter_sweep(cfg, workers=None):
    """Yield records in ``(model, n, trial)`` order as they become available."""
    workers = worker_count() if workers is None else workers
    jobs = [(cfg, *c) for c in cells(cfg)]
    if workers <= 1:
        for job in jobs:
            yield _run_cell_args(job)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order regardless of completion order
        yield from pool.map(_run_cell_args, jobs, chunksize=max(1, len(jobs) // (8 * workers)))


def run_sweep(cfg, workers=None):
    return list(iter_sweep(cfg, workers))


@dataclass(frozen=True)
class SummaryRow:
    model: str
    n: int
    mean_transitivity: float
    sd_transitivity: float
    min_transitivity: float
    max_transitivity: float
    mean_unmatched: float
    sd_unmatched: float
    min_unmatched: int
    max_unmatched: int


@dataclass
class Summary:
    rows: list
    # (transitivity, unmatched) per record, keyed by model, for the scatter plot
    scatter: dict

    def row(self, model, n):
        for r in self.rows:
            if r.model == model and r.n == n:
                return r
        raise KeyError((model, n))


def _sd(values):
    return statistics.stdev(values) if len(values) > 1 else 0.0


def aggregate(records):
    """Per ``(model, n)`` mean/sd/min/max of transitivity and unmatched count.

    Standard deviations are sample (n - 1) deviations; 0 for a single record.
    """
    records = list(records)
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    groups = {}
    for r in records:
        groups.setdefault((r.model, r.n), []).append(r)
    rows = []
    for (model, n) in sorted(groups, key=lambda k: (MODELS.index(k[0]), k[1])):
        grp = groups[(model, n)]
        t = [r.transitivity for r in grp]
        u = [r.unmatched for r in grp]
        rows.append(SummaryRow(model, n, statistics.fmean(t), _sd(t), min(t), max(t),
                               statistics.fmean(u), _sd(u), min(u), max(u)))
    scatter = {}
    for r in records:
        scatter.setdefault(r.model, []).append((r.transitivity, r.unmatched))
    return Summary(rows, scatter)


def summary_correlation(summary):
    """Spearman correlation of mean transitivity vs mean unmatched over summary rows.

    NaN when either series is constant.
    """
    from scipy.stats import spearmanr

    t = [r.mean_transitivity for r in summary.rows]
    u = [r.mean_unmatched for r in summary.rows]
    if len(set(t)) < 2 or len(set(u)) < 2:
        return math.nan
    return float(spearmanr(t, u).statistic)


def record_row(r):
    d = asdict(r)
    return [d[k] for k in RECORD_FIELDS]


def summary_row(r):
    d = asdict(r)
    return [d[k] for k in SUMMARY_FIELDS]
