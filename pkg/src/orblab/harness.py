"""Benchmark harness: run solvers over a corpus directory and aggregate metrics.

Each corpus file is one instance JSON.  Every (instance, style, solver)
triple yields one :class:`BenchRecord` carrying the median wall time over
``repeats`` runs.  Heuristic records get ``tll_ratio`` against the exact
branch-and-bound result for the same instance and style when that run is
part of the benchmark.
"""

from __future__ import annotations

import csv
import dataclasses
import math
import os
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .geometry import LeaderStyle
from .instance import Instance, read_json
from .labeling import SolveReport
from .solver_nonuniform import (
    DEFAULT_EXACT_CAP,
    HeuristicConfig,
    HeuristicFailure,
    Infeasible,
    TimedOut,
    solve_exact,
    solve_heuristic,
)
from .solver_uniform import solve_uniform

SOLVERS = ("uniform_exact", "heuristic", "exact_bb")
STATUSES = ("ok", "infeasible", "timeout", "failure")


@dataclass
class BenchRecord:
    instance_id: str
    n: int
    distribution: str
    style: str
    solver: str
    tll: float | None
    tll_ratio: float | None
    wall_time_ms: float | None
    crossings: int
    status: str

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


FIELDS = tuple(f.name for f in dataclasses.fields(BenchRecord))


@dataclass
class BenchConfig:
    time_limit: float | None = 60.0  # per exact solve, seconds
    exact_max_n: int = DEFAULT_EXACT_CAP
    workers: int = 1


def load_corpus(corpus_dir: str | os.PathLike) -> list[Instance]:
    """All ``*.json`` instances in ``corpus_dir``, sorted by instance id."""
    root = Path(corpus_dir)
    if not root.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {root}")
    insts = []
    for path in sorted(root.glob("*.json")):
        inst = read_json(path)
        if not inst.id:
            inst = dataclasses.replace(inst, id=path.stem)
        insts.append(inst)
    insts.sort(key=lambda x: x.id)
    return insts


def _run_once(inst: Instance, style: LeaderStyle, solver: str, cfg: BenchConfig):
    """One solve; returns (status, tll, crossings, wall_time_s, order)."""
    if solver == "uniform_exact":
        lab, rep = solve_uniform(inst.with_uniform_widths(), style)
        return "ok", rep.tll, rep.crossings, rep.wall_time, lab.order
    if solver == "heuristic":
        res = solve_heuristic(inst, HeuristicConfig(style=style))
        if isinstance(res, HeuristicFailure):
            r = res.report
            return "failure", r.tll, r.crossings, r.wall_time, res.best.order
        lab, rep = res
        return "ok", rep.tll, rep.crossings, rep.wall_time, lab.order
    if inst.n > cfg.exact_max_n:
        # beyond the cap the search is not attempted; treated as an exhausted budget
        return "timeout", None, 0, 0.0, None
    res = solve_exact(inst, style, time_limit=cfg.time_limit, max_n=cfg.exact_max_n)
    if isinstance(res, Infeasible):
        return "infeasible", None, 0, res.report.wall_time, None
    if isinstance(res, TimedOut):
        r: SolveReport = res.report
        tll = None if res.best is None else r.tll
        return "timeout", tll, 0, r.wall_time, None
    lab, rep = res
    return "ok", rep.tll, rep.crossings, rep.wall_time, lab.order


def _bench_instance(inst: Instance, styles, solvers, repeats: int, cfg: BenchConfig) -> list[BenchRecord]:
    out = []
    dist = inst.distribution or ""
    for style in styles:
        style = LeaderStyle(style)
        results = {}
        for solver in solvers:
            runs = [_run_once(inst, style, solver, cfg) for _ in range(repeats)]
            first = runs[0]
            # timeouts depend on the clock; every other outcome must repeat exactly
            if first[0] != "timeout" and any(r[:3] + r[4:] != first[:3] + first[4:] for r in runs):
                raise RuntimeError(f"non-deterministic {solver} result on {inst.id}")
            results[solver] = (first, statistics.median(r[3] for r in runs))
        exact = results.get("exact_bb")
        ref = exact[0][1] if exact is not None and exact[0][0] == "ok" else None
        for solver in solvers:
            (status, tll, crossings, _, _), wall = results[solver]
            ratio = None
            if status == "ok" and tll is not None:
                if solver in ("uniform_exact", "exact_bb"):
                    ratio = 1.0
                elif ref is not None:
                    ratio = tll / ref if ref > 0 else 1.0
            out.append(
                BenchRecord(
                    instance_id=inst.id,
                    n=inst.n,
                    distribution=dist,
                    style=style.value,
                    solver=solver,
                    tll=tll,
                    tll_ratio=ratio,
                    wall_time_ms=1000.0 * wall,
                    crossings=crossings,
                    status=status,
                )
            )
    return out


def run_corpus(
    corpus_dir,
    styles=("SL", "OR"),
    solvers=("heuristic", "exact_bb"),
    repeats: int = 5,
    cfg: BenchConfig | None = None,
) -> list[BenchRecord]:
    """Benchmark every instance of ``corpus_dir``; output is ordered by instance id."""
    cfg = cfg or BenchConfig()
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    for s in solvers:
        if s not in SOLVERS:
            raise ValueError(f"unknown solver {s!r}")
    styles = [LeaderStyle(s) for s in styles]
    insts = load_corpus(corpus_dir)

    def job(inst):
        return _bench_instance(inst, styles, list(solvers), repeats, cfg)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(job, insts))
    else:
        chunks = [job(inst) for inst in insts]
    return [rec for chunk in chunks for rec in chunk]


# --------------------------------------------------------------------------- csv


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(records, path, mask_timing: bool = False) -> None:
    """Write records with columns in field order.

    ``mask_timing`` blanks ``wall_time_ms``, the one column that is a
    measurement rather than a function of the inputs.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(FIELDS)
        for rec in records:
            row = dataclasses.astuple(rec)
            if mask_timing:
                row = tuple(None if f == "wall_time_ms" else v for f, v in zip(FIELDS, row))
            w.writerow([_cell(v) for v in row])


_PARSERS = {
    "n": int,
    "crossings": int,
    "tll": float,
    "tll_ratio": float,
    "wall_time_ms": float,
}


def read_csv(path) -> list[BenchRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != FIELDS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        out = []
        for row in reader:
            kw = {}
            for k in FIELDS:
                v = row[k]
                if k in _PARSERS:
                    kw[k] = None if v == "" and k not in ("n", "crossings") else _PARSERS[k](v)
                else:
                    kw[k] = v
            out.append(BenchRecord(**kw))
    return out


# --------------------------------------------------------------------------- summary


@dataclass
class SummaryRow:
    style: str
    solver: str
    count: int
    mean_tll_ratio: float | None
    max_tll_ratio: float | None
    median_tll_ratio: float | None
    mean_wall_time_ms: float
    median_wall_time_ms: float
    success_rate: float


def summarize(records) -> list[SummaryRow]:
    """Per (style, solver): arithmetic mean, max and median of tll_ratio and wall time.

    Ratios are aggregated over records that have one.  ``success_rate`` is the
    share of records with status ``ok``.
    """
    records = list(records)
    if not records:
        raise ValueError("summarize needs at least one record")
    groups: dict[tuple[str, str], list[BenchRecord]] = {}
    for rec in records:
        groups.setdefault((rec.style, rec.solver), []).append(rec)
    rows = []
    for (style, solver) in sorted(groups):
        recs = groups[(style, solver)]
        ratios = [r.tll_ratio for r in recs if r.tll_ratio is not None]
        walls = [r.wall_time_ms for r in recs if r.wall_time_ms is not None]
        rows.append(
            SummaryRow(
                style=style,
                solver=solver,
                count=len(recs),
                mean_tll_ratio=math.fsum(ratios) / len(ratios) if ratios else None,
                max_tll_ratio=max(ratios) if ratios else None,
                median_tll_ratio=statistics.median(ratios) if ratios else None,
                mean_wall_time_ms=math.fsum(walls) / len(walls) if walls else math.nan,
                median_wall_time_ms=statistics.median(walls) if walls else math.nan,
                success_rate=sum(r.status == "ok" for r in recs) / len(recs),
            )
        )
    return rows


def format_summary(rows) -> str:
    def fmt(x, spec):
        return "-" if x is None or (isinstance(x, float) and math.isnan(x)) else format(x, spec)

    head = f"{'style':<5} {'solver':<13} {'count':>5} {'mean_r':>7} {'max_r':>7} {'med_ms':>9} {'ok':>6}"
    lines = [head]
    for r in rows:
        lines.append(
            f"{r.style:<5} {r.solver:<13} {r.count:>5} {fmt(r.mean_tll_ratio, '7.4f')} "
            f"{fmt(r.max_tll_ratio, '7.4f')} {fmt(r.median_wall_time_ms, '9.3f')} {r.success_rate:>6.1%}"
        )
    return "\n".join(lines)
