"""Demand-driven exploration of a computer's input tree.

Only prefixes the computer actually asks to extend are forked, so the tree
explored is the tree of reachable read states rather than all 2^n strings.
The step budget applies per node, which keeps snapshots reproducible no
matter how many nodes a tree has.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from .bits import ZERO, Dyadic, canonical_key, restrict
from .conf import clamp_budget, lab_setting
from .exceptions import BudgetExhaustedError, NoHaltingInput
from .vm import Outcome

logger = logging.getLogger(__name__)


class Entry(NamedTuple):
    input: str
    output: str
    steps: int


@dataclass(frozen=True)
class DomainSnapshot:
    computer: str
    budget: int
    depth: int
    entries: Tuple[Entry, ...]
    exhausted: Tuple[str, ...] = ()
    pruned: Tuple[str, ...] = ()

    @property
    def frontier(self):
        return len(self.exhausted) + len(self.pruned)

    @property
    def complete(self):
        """Every input of length <= depth is settled."""
        return not self.exhausted

    @property
    def closed(self):
        """The whole domain has been seen."""
        return self.frontier == 0

    def complete_to(self, n):
        if any(len(node) <= n for node in self.exhausted):
            return False
        return n <= self.depth or not self.pruned

    @property
    def domain(self):
        return frozenset(entry.input for entry in self.entries)

    def restrict(self, n):
        return restrict(self.domain, n)

    def outputs(self):
        return {entry.input: entry.output for entry in self.entries}

    @property
    def lower(self):
        total = ZERO
        for entry in self.entries:
            total += Dyadic.unit(len(entry.input))
        return total


def explore(computer, budget, depth, label=None):
    """Breadth-first walk of the demand tree, each node run for ``budget`` steps."""
    if depth < 0:
        raise ValueError(f'depth must be non-negative, got {depth}')
    entries = []
    exhausted = []
    pruned = []
    queue = deque([''])
    while queue:
        prefix = queue.popleft()
        outcome = computer.run(prefix, budget)
        if outcome.kind is Outcome.HALTED:
            entries.append(Entry(prefix, outcome.output, outcome.steps))
        elif outcome.kind is Outcome.NEEDS_INPUT:
            if len(prefix) < depth:
                queue.append(prefix + '0')
                queue.append(prefix + '1')
            else:
                pruned.append(prefix)
        elif outcome.kind is Outcome.BUDGET_EXHAUSTED:
            exhausted.append(prefix)
    return DomainSnapshot(
        computer=label or str(computer),
        budget=budget,
        depth=depth,
        entries=tuple(sorted(entries, key=lambda e: canonical_key(e.input))),
        exhausted=tuple(sorted(exhausted, key=canonical_key)),
        pruned=tuple(sorted(pruned, key=canonical_key)),
    )


def dovetail(computer, budget, depth, label=None):
    """Snapshots with per-node budget min(2^t, budget) and depth min(t, depth)."""
    t = 0
    while True:
        stage_budget = min(2 ** t, budget)
        stage_depth = min(t, depth)
        snapshot = explore(computer, stage_budget, stage_depth, label)
        logger.debug(
            'stage %d of %s: budget=%d depth=%d entries=%d frontier=%d',
            t, snapshot.computer, stage_budget, stage_depth, len(snapshot.entries), snapshot.frontier,
        )
        yield snapshot
        if snapshot.closed or (stage_budget == budget and stage_depth == depth):
            return
        t += 1


class OmegaApproximation(NamedTuple):
    lower: Dyadic
    budget: int
    computer: str
    closed: bool


def omega_approx(computer, budget, depth=None, label=None):
    if depth is None:
        depth = min(budget, lab_setting('DEFAULT_DEPTH'))
    snapshot = explore(computer, budget, depth, label)
    return OmegaApproximation(snapshot.lower, budget, snapshot.computer, snapshot.closed)


class RunningTime(NamedTuple):
    steps: int
    exact: bool


def max_running_time(computer, n, budget):
    """T_n: the longest halting run among inputs of length at most n."""
    snapshot = explore(computer, budget, max(n, 0))
    steps = [entry.steps for entry in snapshot.entries if len(entry.input) <= n]
    if not steps:
        raise NoHaltingInput(f'no halting input of length <= {n} for {snapshot.computer}')
    return RunningTime(max(steps), snapshot.complete_to(n))


class HaltingLength(NamedTuple):
    length: Optional[int]
    exact: bool


def min_halting_length(computer, budget, depth):
    snapshot = explore(computer, budget, depth)
    if not snapshot.entries:
        return HaltingLength(None, snapshot.closed)
    shortest = min(len(entry.input) for entry in snapshot.entries)
    return HaltingLength(shortest, snapshot.complete_to(shortest))


def domain_from_time_bound(computer, n, time_bound):
    """Inputs of length <= n halting within ``time_bound`` steps."""
    if time_bound < 1:
        raise ValueError(f'time bound must be at least 1, got {time_bound}')
    if n < 0:
        return frozenset()
    return explore(computer, time_bound, n).restrict(n)


class DomainEnumeration:
    """A fixed recursive enumeration p0, p1, ... of a computer's domain.

    Stages come from ``dovetail``; inputs found in a stage are appended in
    canonical order. A run reads one bit per step, so by default the depth is
    capped at the budget and the stages always end. ``closed`` tells whether
    they ended because the tree closed, that is whether the members are all
    of the domain.
    """

    def __init__(self, computer, budget=None, depth=None, label=None):
        self.computer = computer
        self.budget = clamp_budget(budget or lab_setting('DEFAULT_BUDGET'))
        self.depth = self.budget if depth is None else depth
        self.label = label or str(computer)
        self.members = []
        self._positions = {}
        self._stages = dovetail(computer, self.budget, self.depth, self.label)
        self.finished = False
        self.closed = False

    def _advance(self):
        if self.finished:
            return False
        snapshot = next(self._stages, None)
        if snapshot is None:
            self.finished = True
            logger.debug('enumeration of %s ended with %d members, closed=%s', self.label, len(self.members), self.closed)
            return False
        for entry in snapshot.entries:
            if entry.input not in self._positions:
                self._positions[entry.input] = len(self.members)
                self.members.append(entry.input)
        self.closed = snapshot.closed
        return True

    def __getitem__(self, i):
        while i >= len(self.members):
            if not self._advance():
                raise IndexError(i)
        return self.members[i]

    def index_of(self, p):
        while p not in self._positions:
            if not self._advance():
                raise BudgetExhaustedError(f'{p or "^"} not enumerated from {self.label}')
        return self._positions[p]

    def run_until_finished(self):
        while self._advance():
            pass
        return list(self.members)
