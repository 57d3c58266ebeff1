"""Schur-number decision models and the benchmark sweep behind the CLI.

A Schur instance asks whether [1, n] splits into k sum-free classes: no class
may contain a, b and a+b (a = b included, so a class containing a may not
contain 2a).  Class labels are fully interchangeable, which makes the model a
natural stress test for the value-precedence encodings.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional, Sequence

from .engine import IntVar, Model
from .precedence import encode_all_precedence, encode_pair_precedence
from .propagators import post_not_all_equal3
from .search import Budget, Heuristic, SearchResult, solve

SYM_MODES = ("none", "adjacent", "all")


@dataclass(frozen=True)
class SchurInstance:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("need n >= 1 and k >= 1")

    @property
    def label(self) -> str:
        return f"S({self.n},{self.k})"


def sum_triples(n: int) -> list[tuple[int, int, int]]:
    """All (a, b, a+b) with a <= b and a+b <= n."""
    return [(a, b, a + b)
            for a in range(1, n + 1)
            for b in range(a, n - a + 1)]


def build_schur_model(inst: SchurInstance, sym: str = "none") -> tuple[Model, list[IntVar]]:
    """Model with X_i = class of integer i; sym picks the symmetry breaking.

    'none' posts only the sum-free triples, 'adjacent' adds one pair
    precedence chain per adjacent class pair, 'all' one chain ordering the
    first occurrences of all k classes.
    """
    if sym not in SYM_MODES:
        raise ValueError(f"unknown symmetry mode {sym!r}")
    model = Model()
    xs = [model.add_fd_var(range(1, inst.k + 1), name=f"X{i}")
          for i in range(1, inst.n + 1)]
    for a, b, c in sum_triples(inst.n):
        post_not_all_equal3(model, xs[a - 1], xs[b - 1], xs[c - 1], category="user")
    if sym == "adjacent":
        for v in range(1, inst.k):
            encode_pair_precedence(model, v, v + 1, xs)
    elif sym == "all":
        encode_all_precedence(model, list(range(1, inst.k + 1)), xs)
    return model, xs


@dataclass
class ReportRow:
    instance: str
    sym: str
    user_constraints: int
    encoding_constraints: int
    backtracks: int
    nodes: int
    solutions: int
    time_ms: int
    halted: bool


CSV_COLUMNS = ("instance", "sym", "user_constraints", "encoding_constraints",
               "backtracks", "nodes", "solutions", "time_ms", "halted")


def run_one(inst: SchurInstance, sym: str, mode: str = "all",
            budget: Optional[Budget] = None,
            heuristic: Heuristic = Heuristic()) -> tuple[ReportRow, SearchResult]:
    model, xs = build_schur_model(inst, sym)
    result = solve(model, xs, heuristic=heuristic, mode=mode, budget=budget)
    counts = model.posted_counts
    row = ReportRow(
        instance=inst.label,
        sym=sym,
        user_constraints=counts.get("user", 0),
        encoding_constraints=counts.get("encoding", 0),
        backtracks=result.stats.backtracks,
        nodes=result.stats.nodes,
        solutions=result.stats.solutions,
        time_ms=round(result.stats.wall_time * 1000),
        halted=result.halted,
    )
    return row, result


def run_bench(instances: Sequence[SchurInstance],
              syms: Sequence[str] = SYM_MODES,
              mode: str = "all",
              budget: Optional[Budget] = Budget(max_seconds=600.0),
              heuristic: Heuristic = Heuristic()) -> list[ReportRow]:
    """One row per instance and symmetry mode, in input order."""
    rows = []
    for inst in instances:
        for sym in syms:
            row, _ = run_one(inst, sym, mode=mode, budget=budget, heuristic=heuristic)
            rows.append(row)
    return rows


def format_table(rows: Sequence[ReportRow]) -> str:
    """Aligned text table; halted rows show '-' for the cut-off counters."""
    header = ["instance", "sym", "user", "encoding", "backtracks",
              "nodes", "solutions", "time_ms", "halted"]
    body = []
    for r in rows:
        if r.halted:
            cells = [r.instance, r.sym, str(r.user_constraints),
                     str(r.encoding_constraints), "-", "-", "-",
                     str(r.time_ms), "yes"]
        else:
            cells = [r.instance, r.sym, str(r.user_constraints),
                     str(r.encoding_constraints), str(r.backtracks),
                     str(r.nodes), str(r.solutions), str(r.time_ms), "no"]
        body.append(cells)
    widths = [max(len(header[i]), *(len(row[i]) for row in body)) if body
              else len(header[i]) for i in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for cells in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip())
    return "\n".join(lines) + "\n"


def rows_to_csv(rows: Sequence[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([r.instance, r.sym, r.user_constraints,
                         r.encoding_constraints, r.backtracks, r.nodes,
                         r.solutions, r.time_ms,
                         "true" if r.halted else "false"])
    return buf.getvalue()


def write_csv(rows: Sequence[ReportRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))
