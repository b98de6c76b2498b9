"""Exhaustive per-n tree surveys, CSV persistence and the three summary tables."""

from __future__ import annotations

import csv
import io
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .formulas import KNOWN_TREE_MAXIMA, forest_max_table, path_forts
from .graph import CapacityExceeded, Graph, NotATree, is_tree
from .oracle import brute_force_minimal_forts
from .treegen import GENERATION_MAX, TreeCode, decode_graph6, describe_tree, tree_from_levels

DEFAULT_N_CEILING = 16
SURVEY_FIELDS = ["n", "tree_count", "max_forts", "fort_sum", "mean_forts", "argmax_graph6", "total_seconds", "mean_ms"]
TIMING_FIELDS = ("total_seconds", "mean_ms")


class MissingSurveyData(LookupError):
    pass


class OracleMismatch(AssertionError):
    pass


def format_fraction(x: Fraction, places: int = 6) -> str:
    """Decimal rendering of an exact rational, correctly rounded (ties to even)."""
    q = Decimal(1).scaleb(-places)
    return str((Decimal(x.numerator) / Decimal(x.denominator)).quantize(q, rounding=ROUND_HALF_EVEN))


@dataclass(frozen=True)
class SurveyRow:
    n: int
    tree_count: int
    max_forts: int
    fort_sum: int
    argmax_codes: tuple[str, ...]
    total_seconds: float | None = None

    @property
    def mean_forts(self) -> Fraction:
        return Fraction(self.fort_sum, self.tree_count)

    @property
    def mean_ms(self) -> float | None:
        if self.total_seconds is None:
            return None
        return 1000 * self.total_seconds / self.tree_count

    def as_record(self, places: int = 6) -> dict[str, str]:
        return {
            "n": str(self.n),
            "tree_count": str(self.tree_count),
            "max_forts": str(self.max_forts),
            "fort_sum": str(self.fort_sum),
            "mean_forts": format_fraction(self.mean_forts, places),
            "argmax_graph6": " ".join(self.argmax_codes),
            "total_seconds": "" if self.total_seconds is None else repr(self.total_seconds),
            "mean_ms": "" if self.mean_ms is None else f"{self.mean_ms:.7f}",
        }

    @classmethod
    def from_record(cls, rec: dict[str, str]) -> SurveyRow:
        return cls(
            n=int(rec["n"]),
            tree_count=int(rec["tree_count"]),
            max_forts=int(rec["max_forts"]),
            fort_sum=int(rec["fort_sum"]),
            argmax_codes=tuple(rec["argmax_graph6"].split()),
            total_seconds=float(rec["total_seconds"]) if rec.get("total_seconds") else None,
        )

    def same_counts(self, other: SurveyRow) -> bool:
        return (self.n, self.tree_count, self.max_forts, self.fort_sum, self.argmax_codes) == (
            other.n, other.tree_count, other.max_forts, other.fort_sum, other.argmax_codes)


def default_workers() -> int:
    env = os.environ.get("FORTS_WORKERS")
    if env:
        return max(1, int(env))
    return max(1, min(8, os.cpu_count() or 1))


@dataclass
class RunConfig:
    n_min: int = 1
    n_max: int = 10
    workers: int = field(default_factory=default_workers)
    oracle_sample: float = 0.0
    seed: int = 0
    allow_long: bool = False
    timing: bool = True
    chunk_size: int = 8192
    input_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0.0 <= self.oracle_sample <= 1.0:
            raise ValueError("oracle sample rate must lie in [0, 1]")
        if self.output_format not in ("csv", "json"):
            raise ValueError("output format is csv or json")
        if self.input_path is None:
            if not 1 <= self.n_min <= self.n_max:
                raise ValueError("need 1 <= n_min <= n_max")
            if self.n_max > GENERATION_MAX:
                raise CapacityExceeded(f"survey supports n <= {GENERATION_MAX}")
            if self.n_max > DEFAULT_N_CEILING and not self.allow_long:
                raise CapacityExceeded(f"n > {DEFAULT_N_CEILING} needs allow_long (--allow-long)")


def _aggregate(n: int, level_chunks: Sequence[np.ndarray], counts: Sequence[np.ndarray], seconds: float | None) -> SurveyRow:
    flat = np.concatenate(counts)
    best = int(flat.max())
    hits = np.flatnonzero(flat == best)
    levels = np.concatenate(level_chunks)
    codes = sorted({TreeCode.of(tree_from_levels(levels[i].tolist())).graph6 for i in hits})
    return SurveyRow(n, len(flat), best, int(flat.sum()), tuple(codes), seconds)


def _oracle_check(levels: np.ndarray, counts: np.ndarray, rate: float, rng: random.Random) -> int:
    checked = 0
    for row, c in zip(levels, counts):
        if rng.random() >= rate:
            continue
        t = tree_from_levels(row.tolist())
        expect = len(brute_force_minimal_forts(t))
        if expect != int(c):
            raise OracleMismatch(f"tree {TreeCode.of(t).graph6}: kernel {int(c)} vs oracle {expect}")
        checked += 1
    return checked


def survey_n(n: int, config: RunConfig, pool: ProcessPoolExecutor | None = None) -> SurveyRow:
    """Count minimal forts on every free tree with ``n`` vertices; merged in generation order."""
    start = time.perf_counter()
    chunks = list(kernels.free_tree_chunks(n, config.chunk_size))
    if pool is None:
        counts = [kernels.count_forts_levels(c) for c in chunks]
    else:
        counts = list(pool.map(kernels.count_forts_levels, chunks))
    seconds = time.perf_counter() - start if config.timing else None
    if config.oracle_sample > 0:
        rng = random.Random(config.seed * 1000 + n)
        for c, k in zip(chunks, counts):
            _oracle_check(c, k, config.oracle_sample, rng)
    return _aggregate(n, chunks, counts, seconds)


def run_survey(config: RunConfig) -> list[SurveyRow]:
    if config.input_path is not None:
        with open(config.input_path, encoding="ascii") as fh:
            graphs = [decode_graph6(line) for line in fh if line.strip()]
        return survey_graphs(graphs, config)
    ns = range(config.n_min, config.n_max + 1)
    if config.workers == 1:
        return [survey_n(n, config) for n in ns]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        return [survey_n(n, config, pool) for n in ns]


def survey_graphs(graphs: Iterable[Graph], config: RunConfig) -> list[SurveyRow]:
    """Survey an explicit list of trees (e.g. a graph6 file), grouped by order."""
    by_n: dict[int, list[list[int]]] = {}
    for g in graphs:
        if not is_tree(g):
            raise NotATree("survey input must contain only trees")
        by_n.setdefault(g.n, []).append(list(TreeCode.of(g).level_sequence))
    rows = []
    for n in sorted(by_n):
        start = time.perf_counter()
        levels = np.asarray(by_n[n], dtype=np.uint8)
        counts = kernels.count_forts_levels(levels)
        seconds = time.perf_counter() - start if config.timing else None
        if config.oracle_sample > 0:
            _oracle_check(levels, counts, config.oracle_sample, random.Random(config.seed * 1000 + n))
        rows.append(_aggregate(n, [levels], [counts], seconds))
    return rows


# --- CSV ----------------------------------------------------------------------------------


def rows_to_csv(rows: Iterable[SurveyRow], places: int = 6) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SURVEY_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.as_record(places))
    return buf.getvalue()


def rows_from_csv(text: str) -> list[SurveyRow]:
    return [SurveyRow.from_record(rec) for rec in csv.DictReader(io.StringIO(text))]


def write_survey_csv(path, rows: Iterable[SurveyRow]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))


def read_survey_csv(path) -> list[SurveyRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        return rows_from_csv(fh.read())


def strip_timing(csv_text: str) -> str:
    """CSV with the timing columns removed, for run-to-run comparison."""
    rows = list(csv.DictReader(io.StringIO(csv_text)))
    keep = [f for f in SURVEY_FIELDS if f not in TIMING_FIELDS]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keep, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def table_to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- tables -------------------------------------------------------------------------------


def _by_n(rows: Iterable[SurveyRow], n_max: int | None = None) -> dict[int, SurveyRow]:
    table = {r.n: r for r in rows}
    top = max(table, default=0) if n_max is None else n_max
    missing = [n for n in range(1, top + 1) if n not in table]
    if missing or top == 0:
        raise MissingSurveyData(f"survey rows missing for n = {missing or [1]}")
    return table


def tree_maxima(rows: Iterable[SurveyRow], n_max: int | None = None) -> list[int]:
    """``ft`` list (index 0 unused) from survey rows covering 1..n_max."""
    table = _by_n(rows, n_max)
    top = max(table) if n_max is None else n_max
    return [0] + [table[n].max_forts for n in range(1, top + 1)]


def _forest_name(parts: tuple[int, ...], tree_name: dict[int, str]) -> str:
    if all(p == 1 for p in parts):
        return f"E_{len(parts)}"
    return " + ".join(tree_name[p] if p > 1 else "K_1" for p in parts)


TABLE1_HEADER = ["n", "F_T", "maximum_trees", "F_R", "maximum_forest"]
TABLE2_HEADER = ["n", "F_T", "F_R", "C(n,2)*F_P", "bound_holds"]
TABLE3_HEADER = ["n", "tree_count", "mean_forts", "mean_ms"]


def table1(rows: Iterable[SurveyRow], n_max: int | None = None) -> list[tuple]:
    table = _by_n(rows, n_max)
    top = max(table) if n_max is None else n_max
    ft = [0] + [table[n].max_forts for n in range(1, top + 1)]
    mt = forest_max_table(top, ft)
    names = {n: " ; ".join(describe_tree(decode_graph6(c)) for c in table[n].argmax_codes) for n in range(1, top + 1)}
    return [(n, ft[n], names[n], mt.fr[n], _forest_name(mt.partitions[n], names)) for n in range(1, top + 1)]


def table2(rows: Iterable[SurveyRow] | None = None, n_max: int = 20) -> list[tuple]:
    """Base-case table. Without survey rows, the tree maxima fall back to the known values."""
    if rows is None:
        if n_max > max(KNOWN_TREE_MAXIMA):
            raise MissingSurveyData(f"known tree maxima stop at n = {max(KNOWN_TREE_MAXIMA)}")
        ft = [0] + [KNOWN_TREE_MAXIMA[n] for n in range(1, n_max + 1)]
    else:
        ft = tree_maxima(rows, n_max)
    fr = forest_max_table(n_max, ft).fr
    out = []
    for n in range(1, n_max + 1):
        bound = comb(n, 2) * path_forts(n) if n >= 2 else 1
        out.append((n, ft[n], fr[n], bound, ft[n] <= fr[n] <= bound))
    return out


def table3(rows: Iterable[SurveyRow], places: int = 4) -> list[tuple]:
    out = []
    for r in sorted(rows, key=lambda r: r.n):
        ms = "" if r.mean_ms is None else f"{r.mean_ms:.7f}"
        out.append((r.n, r.tree_count, format_fraction(r.mean_forts, places), ms))
    if not out:
        raise MissingSurveyData("no survey rows")
    return out


def survey_rows_for(n_max: int, config: RunConfig | None = None, cached: Iterable[SurveyRow] = ()) -> list[SurveyRow]:
    """Rows for 1..n_max, reusing ``cached`` where present and surveying the rest."""
    have = {r.n: r for r in cached}
    need = [n for n in range(1, n_max + 1) if n not in have]
    if need:
        base = config or RunConfig()
        cfg = RunConfig(n_min=min(need), n_max=max(need), workers=base.workers, allow_long=True,
                        timing=base.timing, oracle_sample=base.oracle_sample, seed=base.seed)
        for r in run_survey(cfg):
            have.setdefault(r.n, r)
    return [have[n] for n in range(1, n_max + 1)]

