"""Run several allocators on one instance and tabulate them against the oracle."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field, fields
from typing import Callable, Optional

from . import allocators
from .audit import audit
from .errors import FairseatError, InvalidParams
from .model import Instance, validate_allocation
from .oracle import opt_social_welfare, two_stage_optimum

ALGORITHMS = {
    "round-robin": allocators.round_robin,
    "mis": allocators.mis_round_robin,
    "ef1cc": allocators.ef1cc_round_robin,
    "maxmin": allocators.maxmin_augmenting,
    "dp": None,  # needs max_students; see AlgorithmChoice.run
}

ORACLE_LABEL = "OPT"


@dataclass(frozen=True)
class AlgorithmChoice:
    name: str
    max_students: int = 3

    def __post_init__(self):
        if self.name not in ALGORITHMS:
            raise InvalidParams(f"unknown algorithm {self.name!r}; choose from {list(ALGORITHMS)}")
        if self.max_students < 1:
            raise InvalidParams("max_students must be >= 1")

    def run(self, instance: Instance):
        if self.name == "dp":
            return allocators.dp_exact_small(instance, max_students=self.max_students)[1]
        return ALGORITHMS[self.name](instance)


@dataclass
class Row:
    dataset: str
    algorithm: str
    maxmin: Optional[float] = None
    social_welfare: Optional[float] = None
    runtime_ms: Optional[float] = None
    ef1: Optional[bool] = None
    ef1cc: Optional[bool] = None
    oracle_maxmin: Optional[float] = None
    oracle_sw: Optional[float] = None
    error: str = ""


COLUMNS = [f.name for f in fields(Row)]


@dataclass
class ComparisonTable:
    rows: list = field(default_factory=list)

    def row(self, algorithm: str) -> Row:
        return next(r for r in self.rows if r.algorithm == algorithm)


def _label(choice):
    return choice.name if isinstance(choice, AlgorithmChoice) else choice[0]


def _runner(choice) -> Callable:
    return choice.run if isinstance(choice, AlgorithmChoice) else choice[1]


def _fill(row, instance, alloc):
    report = validate_allocation(instance, alloc)
    if not report.valid:
        row.error = "InvalidAllocation: " + "; ".join(v.detail for v in report.violations)
        return
    result = audit(instance, alloc)
    row.social_welfare = result.social_welfare
    row.maxmin = result.min_utility
    row.ef1 = result.ef1
    row.ef1cc = result.ef1cc


def run_comparison(instance: Instance, algorithms, include_oracle: bool = False,
                   dataset: str = "instance", timing: bool = False) -> ComparisonTable:
    """One row per algorithm, plus an ``OPT`` row when ``include_oracle``.

    ``algorithms`` holds :class:`AlgorithmChoice` values or ``(label,
    callable)`` pairs.  Each output is validated before it is audited; a
    failing algorithm or oracle yields a row with ``error`` set while the
    other rows are still produced.  The ``OPT`` row reports the max-min
    optimum and the best welfare attainable at that max-min value; the
    ``oracle_sw`` column is the unconstrained welfare optimum.  Wall-clock
    runtimes are recorded only with ``timing``, which keeps reports
    reproducible byte for byte by default.
    """
    instance.require_expanded()
    table = ComparisonTable()
    oracle_cols = {}
    if include_oracle:
        row = Row(dataset, ORACLE_LABEL)
        try:
            t0 = time.perf_counter()
            first, second = two_stage_optimum(instance)
            elapsed = (time.perf_counter() - t0) * 1000
            unconstrained = opt_social_welfare(instance)
        except FairseatError as exc:
            row.error = type(exc).__name__
        else:
            _fill(row, instance, second.allocation)
            row.maxmin = first.value
            row.runtime_ms = elapsed if timing else None
            oracle_cols = {"oracle_maxmin": first.value, "oracle_sw": unconstrained.value}
            row.oracle_maxmin, row.oracle_sw = first.value, unconstrained.value
        table.rows.append(row)
    for choice in algorithms:
        row = Row(dataset, _label(choice), **oracle_cols)
        try:
            t0 = time.perf_counter()
            alloc = _runner(choice)(instance)
            elapsed = (time.perf_counter() - t0) * 1000
        except FairseatError as exc:
            row.error = f"{type(exc).__name__}: {exc}"
        else:
            row.runtime_ms = elapsed if timing else None
            _fill(row, instance, alloc)
        table.rows.append(row)
    return table


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return str(int(value)) if value.is_integer() else f"{value:.6g}"
    return str(value)


def emit_report(table: ComparisonTable, fmt: str = "csv") -> bytes:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for r in table.rows:
            writer.writerow([_cell(getattr(r, c)) for c in COLUMNS])
        return buf.getvalue().encode()
    if fmt == "json":
        rows = [{c: asdict(r)[c] for c in COLUMNS} for r in table.rows]
        return (json.dumps(rows, indent=2) + "\n").encode()
    if fmt == "pretty":
        cells = [COLUMNS] + [[_cell(getattr(r, c)) for c in COLUMNS] for r in table.rows]
        widths = [max(len(row[k]) for row in cells) for k in range(len(COLUMNS))]
        lines = ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown report format {fmt!r}")
