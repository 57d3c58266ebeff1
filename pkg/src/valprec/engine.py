"""Finite-domain constraint core: variables, trail, and a FIFO propagation queue.

Integer variables keep explicit membership domains, so propagators can do
exact value-level pruning rather than bounds reasoning.  Set variables are
interval-bounded (lower bound, upper bound, cardinality range).  All domain
mutations go through the :class:`Model`, which records undo information on a
trail; ``push_choice``/``pop_choice`` bracket search decisions.

Propagators subscribe to variable events.  A FIFO queue with per-propagator
deduplication drives ``propagate`` to a fixpoint; a propagator that reports
entailment is never woken again until backtracking undoes the report.
"""
from __future__ import annotations

import enum
from collections import deque
from typing import Iterable, Optional


class PropagationStatus(enum.Enum):
    AT_FIXPOINT = "at_fixpoint"
    FAILED = "failed"


# Event kinds a propagator may watch on an integer variable.
ANY_CHANGE = "any"
BOUNDS_CHANGE = "bounds"


class IntVar:
    """Integer variable with an explicit finite domain.

    The domain set is owned by the model; read it through ``values()`` or
    ``domain`` and mutate it only via model methods.
    """

    __slots__ = ("index", "name", "domain", "watchers")

    def __init__(self, index: int, values: Iterable[int], name: Optional[str]):
        self.index = index
        self.name = name or f"x{index}"
        self.domain: set[int] = set(values)
        self.watchers: list[tuple["Propagator", str]] = []

    def values(self) -> tuple[int, ...]:
        return tuple(sorted(self.domain))

    def min(self) -> int:
        return min(self.domain)

    def max(self) -> int:
        return max(self.domain)

    def is_assigned(self) -> bool:
        return len(self.domain) == 1

    def value(self) -> int:
        if len(self.domain) != 1:
            raise ValueError(f"{self.name} is not assigned")
        return next(iter(self.domain))

    def __contains__(self, v: int) -> bool:
        return v in self.domain

    def __repr__(self) -> str:
        return f"IntVar({self.name}, {sorted(self.domain)})"


class SetVar:
    """Set variable bounded by required elements, possible elements, and cardinality."""

    __slots__ = ("index", "name", "lb", "ub", "card_lo", "card_hi", "watchers")

    def __init__(self, index: int, lb: Iterable[int], ub: Iterable[int],
                 card: Optional[tuple[int, int]], name: Optional[str]):
        self.index = index
        self.name = name or f"s{index}"
        self.lb: set[int] = set(lb)
        self.ub: set[int] = set(ub)
        if not self.lb <= self.ub:
            raise ValueError(f"{self.name}: lower bound must be within upper bound")
        lo, hi = card if card is not None else (len(self.lb), len(self.ub))
        lo, hi = max(lo, len(self.lb)), min(hi, len(self.ub))
        if lo > hi:
            raise ValueError(f"{self.name}: empty cardinality range")
        self.card_lo, self.card_hi = lo, hi
        self.watchers: list[tuple["Propagator", str]] = []

    def is_assigned(self) -> bool:
        return self.lb == self.ub

    def __repr__(self) -> str:
        return f"SetVar({self.name}, lb={sorted(self.lb)}, ub={sorted(self.ub)})"


class Propagator:
    """Base class for propagators.

    Subclasses implement ``filter(model) -> bool`` (False means failure) and
    list their watches as ``(var, event)`` pairs before posting.  A filter may
    call ``model.set_entailed(self)`` once its constraint can no longer be
    violated; the engine then stops waking it on this branch.
    """

    __slots__ = ("pid", "entailed", "queued", "watches")

    def __init__(self):
        self.pid = -1
        self.entailed = False
        self.queued = False
        self.watches: list[tuple[object, str]] = []

    def filter(self, model: "Model") -> bool:
        raise NotImplementedError


class AlwaysFail(Propagator):
    """Posted when a construction step detects unsatisfiability up front."""

    def filter(self, model: "Model") -> bool:
        return False


# Trail record tags.
_INT_RM = 0      # (tag, var, removed frozenset)
_SET_LB = 1      # (tag, var, added frozenset)
_SET_UB = 2      # (tag, var, removed frozenset)
_SET_CARD = 3    # (tag, var, old_lo, old_hi)
_ENTAIL = 4      # (tag, propagator)


class Model:
    """A constraint model: variables, propagators, trail, and the queue."""

    def __init__(self):
        self.int_vars: list[IntVar] = []
        self.set_vars: list[SetVar] = []
        self.propagators: list[Propagator] = []
        self.posted_counts: dict[str, int] = {}
        self._trail: list[tuple] = []
        self._marks: list[int] = []
        self._queue: deque[Propagator] = deque()
        self._failed = False

    # ------------------------------------------------------------------ vars

    def add_fd_var(self, values: Iterable[int], name: Optional[str] = None) -> IntVar:
        vals = set(values)
        if not vals:
            raise ValueError("cannot create a variable with an empty domain")
        v = IntVar(len(self.int_vars), vals, name)
        self.int_vars.append(v)
        return v

    def add_set_var(self, lb: Iterable[int], ub: Iterable[int],
                    card: Optional[tuple[int, int]] = None,
                    name: Optional[str] = None) -> SetVar:
        s = SetVar(len(self.set_vars), lb, ub, card, name)
        self.set_vars.append(s)
        return s

    # ----------------------------------------------------------- propagators

    def post(self, prop: Propagator, category: str = "user") -> Propagator:
        prop.pid = len(self.propagators)
        self.propagators.append(prop)
        self.posted_counts[category] = self.posted_counts.get(category, 0) + 1
        for var, event in prop.watches:
            var.watchers.append((prop, event))
        self._schedule(prop)
        return prop

    def posted_total(self) -> int:
        return sum(self.posted_counts.values())

    def set_entailed(self, prop: Propagator) -> None:
        if not prop.entailed:
            prop.entailed = True
            self._trail.append((_ENTAIL, prop))

    # ------------------------------------------------------------- mutation

    def remove_value(self, var: IntVar, v: int) -> bool:
        """Remove ``v`` from ``var``; False on domain wipeout."""
        if v not in var.domain:
            return True
        had_bound = v == min(var.domain) or v == max(var.domain)
        var.domain.discard(v)
        self._trail.append((_INT_RM, var, frozenset((v,))))
        if not var.domain:
            self._failed = True
            return False
        self._wake_int(var, had_bound)
        return True

    def retain_values(self, var: IntVar, allowed: Iterable[int]) -> bool:
        """Restrict ``var`` to ``allowed``; False on wipeout."""
        allowed = set(allowed)
        removed = var.domain - allowed
        if not removed:
            return True
        old_lo, old_hi = min(var.domain), max(var.domain)
        var.domain -= removed
        self._trail.append((_INT_RM, var, frozenset(removed)))
        if not var.domain:
            self._failed = True
            return False
        bounds = min(var.domain) != old_lo or max(var.domain) != old_hi
        self._wake_int(var, bounds)
        return True

    def assign(self, var: IntVar, v: int) -> bool:
        if v not in var.domain:
            self._failed = True
            return False
        return self.retain_values(var, (v,))

    def include_value(self, svar: SetVar, v: int) -> bool:
        """Add ``v`` to the lower bound of ``svar``; False on failure."""
        if v in svar.lb:
            return True
        if v not in svar.ub:
            self._failed = True
            return False
        svar.lb.add(v)
        self._trail.append((_SET_LB, svar, frozenset((v,))))
        if len(svar.lb) > svar.card_hi:
            self._failed = True
            return False
        self._wake_set(svar)
        return True

    def exclude_value(self, svar: SetVar, v: int) -> bool:
        """Remove ``v`` from the upper bound of ``svar``; False on failure."""
        if v not in svar.ub:
            return True
        if v in svar.lb:
            self._failed = True
            return False
        svar.ub.discard(v)
        self._trail.append((_SET_UB, svar, frozenset((v,))))
        if len(svar.ub) < svar.card_lo:
            self._failed = True
            return False
        self._wake_set(svar)
        return True

    def restrict_card(self, svar: SetVar, lo: int, hi: int) -> bool:
        lo, hi = max(lo, svar.card_lo), min(hi, svar.card_hi)
        if lo == svar.card_lo and hi == svar.card_hi:
            return True
        self._trail.append((_SET_CARD, svar, svar.card_lo, svar.card_hi))
        svar.card_lo, svar.card_hi = lo, hi
        if lo > hi or len(svar.lb) > hi or len(svar.ub) < lo:
            self._failed = True
            return False
        self._wake_set(svar)
        return True

    def fail(self) -> None:
        """Mark the current branch failed (used by constructions that detect wipeout)."""
        self._failed = True

    # ----------------------------------------------------------------- queue

    def _schedule(self, prop: Propagator) -> None:
        if not prop.queued and not prop.entailed:
            prop.queued = True
            self._queue.append(prop)

    def _wake_int(self, var: IntVar, bounds_changed: bool) -> None:
        for prop, event in var.watchers:
            if event == ANY_CHANGE or bounds_changed:
                self._schedule(prop)

    def _wake_set(self, svar: SetVar) -> None:
        for prop, _ in svar.watchers:
            self._schedule(prop)

    def propagate(self) -> PropagationStatus:
        """Run queued propagators to a fixpoint."""
        if self._failed:
            self._clear_queue()
            return PropagationStatus.FAILED
        while self._queue:
            prop = self._queue.popleft()
            prop.queued = False
            if prop.entailed:
                continue
            if not prop.filter(self) or self._failed:
                self._failed = True
                self._clear_queue()
                return PropagationStatus.FAILED
        return PropagationStatus.AT_FIXPOINT

    def _clear_queue(self) -> None:
        while self._queue:
            self._queue.popleft().queued = False

    # ----------------------------------------------------------------- trail

    def push_choice(self) -> None:
        self._marks.append(len(self._trail))

    def pop_choice(self) -> None:
        if not self._marks:
            raise RuntimeError("pop_choice without a matching push_choice")
        mark = self._marks.pop()
        while len(self._trail) > mark:
            rec = self._trail.pop()
            tag = rec[0]
            if tag == _INT_RM:
                rec[1].domain |= rec[2]
            elif tag == _SET_LB:
                rec[1].lb -= rec[2]
            elif tag == _SET_UB:
                rec[1].ub |= rec[2]
            elif tag == _SET_CARD:
                rec[1].card_lo, rec[1].card_hi = rec[2], rec[3]
            else:
                rec[1].entailed = False
        self._failed = False
        self._clear_queue()

    @property
    def failed(self) -> bool:
        return self._failed
