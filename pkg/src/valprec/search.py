"""Depth-first search over a model: binary or d-way branching, budgets, stats."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .engine import Model, IntVar, PropagationStatus


@dataclass(frozen=True)
class Heuristic:
    """Variable and value selection, both deterministic.

    var: 'lex' takes the first unassigned decision variable in posting order,
    'mindom' the one with the smallest domain (ties by order).  val: 'asc'
    tries the smallest value first, 'desc' the largest.
    """
    var: str = "lex"
    val: str = "asc"

    def __post_init__(self):
        if self.var not in ("lex", "mindom"):
            raise ValueError(f"unknown variable heuristic {self.var!r}")
        if self.val not in ("asc", "desc"):
            raise ValueError(f"unknown value heuristic {self.val!r}")


@dataclass(frozen=True)
class Budget:
    """Search cut-offs; None means unlimited."""
    max_seconds: Optional[float] = None
    max_nodes: Optional[int] = None


@dataclass
class SearchStats:
    constraints_posted: int = 0
    backtracks: int = 0
    nodes: int = 0
    solutions: int = 0
    wall_time: float = 0.0


@dataclass
class SearchResult:
    solutions: list[tuple[int, ...]] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    halted: bool = False


def solve(model: Model, variables: Sequence[IntVar],
          heuristic: Heuristic = Heuristic(),
          mode: str = "all",
          budget: Optional[Budget] = None,
          branching: str = "binary") -> SearchResult:
    """Enumerate assignments of ``variables`` accepted by the model.

    Branches only on the given decision variables; any other variables in the
    model must be functionally determined by them (true for all encoding state
    variables here), otherwise distinct solutions could be reported once.
    mode 'first' stops at the first solution.  A budget makes the search stop
    early with halted=True; whatever was found so far stays in the result.
    """
    if mode not in ("all", "first"):
        raise ValueError(f"unknown mode {mode!r}")
    if branching not in ("binary", "dway"):
        raise ValueError(f"unknown branching {branching!r}")
    res = SearchResult()
    stats = res.stats
    t0 = time.perf_counter()

    def pick() -> Optional[IntVar]:
        free = [v for v in variables if not v.is_assigned()]
        if not free:
            return None
        if heuristic.var == "mindom":
            return min(free, key=lambda v: len(v.domain))
        return free[0]

    def over_budget() -> bool:
        if budget is None:
            return False
        if budget.max_nodes is not None and stats.nodes >= budget.max_nodes:
            return True
        if budget.max_seconds is not None and \
                time.perf_counter() - t0 >= budget.max_seconds:
            return True
        return False

    STOP, CONTINUE = True, False

    def descend() -> bool:
        if over_budget():
            res.halted = True
            return STOP
        stats.nodes += 1
        if model.propagate() is PropagationStatus.FAILED:
            stats.backtracks += 1
            return CONTINUE
        var = pick()
        if var is None:
            res.solutions.append(tuple(v.value() for v in variables))
            return STOP if mode == "first" else CONTINUE
        vals = var.values()
        if heuristic.val == "desc":
            vals = tuple(reversed(vals))
        if branching == "dway":
            for v in vals:
                model.push_choice()
                model.assign(var, v)
                stop = descend()
                model.pop_choice()
                if stop:
                    return STOP
            return CONTINUE
        v = vals[0]
        model.push_choice()
        model.assign(var, v)
        stop = descend()
        model.pop_choice()
        if stop:
            return STOP
        model.push_choice()
        model.remove_value(var, v)
        stop = descend()
        model.pop_choice()
        return stop

    descend()
    stats.wall_time = time.perf_counter() - t0
    stats.solutions = len(res.solutions)
    stats.constraints_posted = model.posted_total()
    return res
