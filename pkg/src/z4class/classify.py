"""End-to-end classification: per-type cells, per-length tables, checks.

A cell (n, k1, k2) collects representatives of every class of codes of
that type with no identically zero coordinate; its size is N'(n, k1, k2).
The total count N(n, k1, k2) then follows from

    N(n, k1, k2) = N'(n, k1, k2) + N(n - 1, k1, k2),

since codes with a zero coordinate are exactly the trivial extensions of
length n - 1 codes, and extending is injective on classes.  The zero code
(k1 = k2 = 0) is not part of any table.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Union

from . import __version__
from .code_model import StandardGenerator, format_generator, has_zero_coordinate, read_generator, span
from .enumeration import (
    CandidateFilterReport,
    cells,
    closed_form_count,
    closed_form_representatives,
    enumerate_candidates,
)
from .equivalence import ClassReducer
from .weights import METRICS, weight_profile

log = logging.getLogger(__name__)

Counts = Mapping[tuple[int, int], int]


class IncompleteCellError(RuntimeError):
    pass


@dataclass
class ClassificationCell:
    n: int
    k1: int
    k2: int
    representatives: list[StandardGenerator]
    n_prime: Optional[int]
    elapsed: float
    method: str
    complete: bool = True
    candidates: int = 0
    report: Optional[CandidateFilterReport] = None

    @property
    def key(self) -> tuple[int, int]:
        return (self.k1, self.k2)


def classify_cell(
    n: int,
    k1: int,
    k2: int,
    *,
    fast: bool = False,
    time_limit: Optional[float] = None,
    report: bool = False,
) -> ClassificationCell:
    """Classify codes of length n and type 4^k1 2^k2 with no zero coordinate.

    The exhaustive path reduces every candidate generator; when a closed
    form exists for the type, the count must agree with it.  ``fast`` uses
    the closed-form constructions directly where available.  If
    ``time_limit`` (seconds) runs out the cell is returned with
    ``complete=False`` and no count.
    """
    if not 1 <= k1 + k2 <= n:
        raise ValueError(f"need 1 <= k1 + k2 <= n, got (n, k1, k2) = ({n}, {k1}, {k2})")
    start = time.perf_counter()
    expected = closed_form_count(n, k1, k2)
    if fast and expected is not None:
        reps = closed_form_representatives(n, k1, k2)
        return ClassificationCell(n, k1, k2, reps, len(reps), time.perf_counter() - start, "closed_form")

    filter_report = CandidateFilterReport() if report else None
    reducer = ClassReducer()
    for count, g in enumerate(enumerate_candidates(n, k1, k2, filter_report), 1):
        reducer.add(span(g), g)
        if time_limit is not None and count % 256 == 0 and time.perf_counter() - start > time_limit:
            log.warning("cell (%d,%d,%d) stopped after %d candidates", n, k1, k2, count)
            return ClassificationCell(
                n, k1, k2, [], None, time.perf_counter() - start, "exhaustive",
                complete=False, candidates=count, report=filter_report,
            )
    classes = reducer.classes()
    reps = [cl.payload for cl in classes]
    for cl in classes:
        if has_zero_coordinate(cl.representative):
            raise AssertionError(f"representative with a zero coordinate in cell {(n, k1, k2)}")
    if expected is not None and expected != len(reps):
        raise AssertionError(f"cell {(n, k1, k2)}: {len(reps)} classes but the closed form gives {expected}")
    return ClassificationCell(
        n, k1, k2, reps, len(reps), time.perf_counter() - start, "exhaustive",
        candidates=reducer.added, report=filter_report,
    )


@dataclass
class DualityReport:
    n: int
    violations: list[tuple[tuple[int, int], int, tuple[int, int], int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return f"duality N(n,k1,k2) = N(n,n-k1-k2,k2) holds for all cells of length {self.n}"
        lines = [f"duality violated at length {self.n}:"]
        for cell, a, dcell, b in self.violations:
            lines.append(f"  N({self.n},{cell[0]},{cell[1]}) = {a} but N({self.n},{dcell[0]},{dcell[1]}) = {b}")
        return "\n".join(lines)


@dataclass
class ClassificationTable:
    n: int
    cells: dict[tuple[int, int], ClassificationCell]
    n_counts: dict[tuple[int, int], int]
    duality: Optional[DualityReport] = None

    @property
    def complete(self) -> bool:
        return all(c.complete for c in self.cells.values())

    @property
    def n_prime(self) -> dict[tuple[int, int], int]:
        return {k: c.n_prime for k, c in self.cells.items()}

    @property
    def n_prime_total(self) -> Optional[int]:
        return sum(c.n_prime for c in self.cells.values()) if self.complete else None

    @property
    def n_total(self) -> Optional[int]:
        return sum(self.n_counts.values()) if self.complete else None


def duality_check(table: Union[ClassificationTable, "TableCounts"]) -> DualityReport:
    """Check N(n, k1, k2) = N(n, n - k1 - k2, k2) over the whole table.

    The zero code counts as the single class of type (0, 0), which pairs
    with type (n, 0).
    """
    counts = dict(table.n_counts)
    counts[(0, 0)] = 1
    report = DualityReport(table.n)
    for (k1, k2), value in sorted(table.n_counts.items()):
        pair = (table.n - k1 - k2, k2)
        other = counts.get(pair)
        if other != value:
            report.violations.append(((k1, k2), value, pair, other))
    return report


def _worker_count(workers: Optional[int]) -> int:
    cap = os.environ.get("Z4CLASS_THREADS")
    if workers is None:
        workers = os.cpu_count() or 1
    if cap:
        workers = min(workers, max(1, int(cap)))
    return max(1, workers)


def _classify_cell_job(args):
    n, k1, k2, fast, time_limit = args
    return classify_cell(n, k1, k2, fast=fast, time_limit=time_limit)


@dataclass
class TableCounts:
    """Counts-only summary of a length, enough to serve as a prior."""

    n: int
    n_prime: dict[tuple[int, int], int]
    n_counts: dict[tuple[int, int], int]


def classify_length(
    n: int,
    prior: Union[ClassificationTable, TableCounts, Counts, None] = None,
    *,
    fast: bool = False,
    workers: Optional[int] = None,
    out_dir: Union[str, Path, None] = None,
    time_limit: Optional[float] = None,
) -> ClassificationTable:
    """Classify every cell of length n and assemble N via the trivial-extension recurrence.

    ``prior`` supplies N(n - 1, k1, k2), either as a table or as a plain
    {(k1, k2): count} mapping; it is required for n >= 2.  With ``out_dir``
    completed cells are written there and reused on the next run.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n >= 2 and prior is None:
        raise ValueError(f"length {n} needs the counts N({n - 1}, k1, k2) as prior")
    if prior is None:
        prior_counts: dict = {}
    elif isinstance(prior, (ClassificationTable, TableCounts)):
        if prior.n != n - 1:
            raise ValueError(f"prior is for length {prior.n}, expected {n - 1}")
        prior_counts = dict(prior.n_counts)
    else:
        prior_counts = dict(prior)

    results: dict[tuple[int, int], ClassificationCell] = {}
    todo = []
    for k1, k2 in cells(n):
        cached = load_cell(out_dir, n, k1, k2) if out_dir else None
        if cached is not None and (fast or cached.method == "exhaustive"):
            results[(k1, k2)] = cached
        else:
            todo.append((n, k1, k2, fast, time_limit))

    def finish(cell: ClassificationCell):
        results[cell.key] = cell
        log.info("N'(%d,%d,%d) = %s  [%s, %.2fs]", n, cell.k1, cell.k2, cell.n_prime, cell.method, cell.elapsed)
        if out_dir and cell.complete:
            save_cell(out_dir, cell)

    nworkers = min(_worker_count(workers), len(todo)) if todo else 1
    if nworkers > 1:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            for cell in pool.map(_classify_cell_job, todo):
                finish(cell)
    else:
        for job in todo:
            finish(_classify_cell_job(job))

    ordered = {key: results[key] for key in cells(n)}
    n_counts = {}
    if all(c.complete for c in ordered.values()):
        for key, cell in ordered.items():
            previous = prior_counts.get(key, 0) if sum(key) <= n - 1 else 0
            n_counts[key] = cell.n_prime + previous
    table = ClassificationTable(n, ordered, n_counts)
    if table.complete:
        table.duality = duality_check(table)
        if out_dir:
            save_table(out_dir, table)
    return table


def classify_up_to(max_n: int, **kwargs) -> list[ClassificationTable]:
    tables: list[ClassificationTable] = []
    for n in range(1, max_n + 1):
        table = classify_length(n, tables[-1] if tables else None, **kwargs)
        if not table.complete:
            raise IncompleteCellError(f"length {n} did not complete")
        tables.append(table)
    return tables


@dataclass
class OptimalityReport:
    cell: tuple[int, int, int]
    best: dict[str, Optional[int]]
    optimal: dict[str, list[int]]

    def __str__(self) -> str:
        n, k1, k2 = self.cell
        lines = [f"optimal codes for n={n} type 4^{k1} 2^{k2}:"]
        for metric in METRICS:
            idx = ", ".join(str(i) for i in self.optimal[metric])
            lines.append(f"  {metric}: d={self.best[metric]} representatives [{idx}]")
        return "\n".join(lines)


def optimality_report(cell: ClassificationCell) -> OptimalityReport:
    """Largest minimum weight per metric and the representatives attaining it.

    Only meaningful for a complete cell, where the representatives cover
    every class; representatives are referred to by their index.
    """
    if not cell.complete:
        raise IncompleteCellError(f"cell {(cell.n, cell.k1, cell.k2)} is incomplete")
    profiles = [weight_profile(span(g)) for g in cell.representatives]
    best, optimal = {}, {}
    for metric in METRICS:
        values = [p.get(metric) for p in profiles]
        defined = [v for v in values if v is not None]
        best[metric] = max(defined) if defined else None
        optimal[metric] = [i for i, v in enumerate(values) if v == best[metric]]
    return OptimalityReport((cell.n, cell.k1, cell.k2), best, optimal)


# -- persistence -----------------------------------------------------------


def cell_stem(n: int, k1: int, k2: int) -> str:
    return f"n{n}_k{k1}_{k2}"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text)
    tmp.replace(path)


def save_cell(out_dir, cell: ClassificationCell) -> Path:
    """Write generator files and the JSON manifest; the manifest goes last."""
    if not cell.complete:
        raise IncompleteCellError("incomplete cells are not persisted")
    base = Path(out_dir) / f"n{cell.n}"
    stem = cell_stem(cell.n, cell.k1, cell.k2)
    paths = []
    for i, g in enumerate(cell.representatives):
        rel = f"{stem}/rep_{i:05d}.txt"
        _atomic_write(base / rel, format_generator(g))
        paths.append(rel)
    manifest = {
        "n": cell.n,
        "k1": cell.k1,
        "k2": cell.k2,
        "n_prime": cell.n_prime,
        "method": cell.method,
        "representatives": paths,
        "elapsed_seconds": round(cell.elapsed, 3),
        "tool_version": __version__,
    }
    path = base / f"{stem}.json"
    _atomic_write(path, json.dumps(manifest, indent=2) + "\n")
    return path


def load_cell(out_dir, n: int, k1: int, k2: int, with_representatives: bool = True) -> Optional[ClassificationCell]:
    base = Path(out_dir) / f"n{n}"
    path = base / f"{cell_stem(n, k1, k2)}.json"
    if not path.exists():
        return None
    manifest = json.loads(path.read_text())
    reps = [read_generator(base / rel).standard for rel in manifest["representatives"]] if with_representatives else []
    return ClassificationCell(
        manifest["n"], manifest["k1"], manifest["k2"], reps, manifest["n_prime"],
        manifest["elapsed_seconds"], manifest["method"],
    )


def save_table(out_dir, table: ClassificationTable) -> Path:
    summary = {
        "n": table.n,
        "n_prime": {f"{k1},{k2}": v for (k1, k2), v in table.n_prime.items()},
        "n_counts": {f"{k1},{k2}": v for (k1, k2), v in table.n_counts.items()},
        "n_prime_total": table.n_prime_total,
        "n_total": table.n_total,
        "tool_version": __version__,
    }
    path = Path(out_dir) / f"n{table.n}" / "table.json"
    _atomic_write(path, json.dumps(summary, indent=2) + "\n")
    return path


def _parse_counts(raw: Mapping[str, int]) -> dict[tuple[int, int], int]:
    out = {}
    for key, value in raw.items():
        k1, k2 = (int(v) for v in key.split(","))
        out[(k1, k2)] = int(value)
    return out


def load_table_counts(out_dir, n: int) -> Optional[TableCounts]:
    path = Path(out_dir) / f"n{n}" / "table.json"
    if not path.exists():
        return None
    summary = json.loads(path.read_text())
    return TableCounts(n, _parse_counts(summary["n_prime"]), _parse_counts(summary["n_counts"]))


def counts_from_cells(out_dir, max_n: int) -> list[TableCounts]:
    """Rebuild N' and N for lengths 1..max_n from the per-cell manifests alone."""
    out: list[TableCounts] = []
    previous: dict = {}
    for n in range(1, max_n + 1):
        n_prime = {}
        for k1, k2 in cells(n):
            cell = load_cell(out_dir, n, k1, k2, with_representatives=False)
            if cell is None:
                raise FileNotFoundError(f"no manifest for cell ({n},{k1},{k2}) under {out_dir}")
            n_prime[(k1, k2)] = cell.n_prime
        n_counts = {key: v + (previous.get(key, 0) if sum(key) <= n - 1 else 0) for key, v in n_prime.items()}
        out.append(TableCounts(n, n_prime, n_counts))
        previous = n_counts
    return out
