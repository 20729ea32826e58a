"""Halting probability, program-size complexity and output probability.

Values are exact when the explored snapshot certifies the part of the domain
they depend on; otherwise they are bounds and say so.
"""
from typing import NamedTuple, Optional

from .bits import ZERO, Dyadic, canonical_key, pairing
from .computers import TableComputer
from .conf import lab_setting
from .enumerator import explore
from .exceptions import NotClosedWorld


class OmegaValue(NamedTuple):
    value: Dyadic
    exact: bool


class Complexity(NamedTuple):
    value: Optional[int]
    witness: Optional[str]
    exact: bool

    @property
    def infinite(self):
        return self.value is None


class Probability(NamedTuple):
    value: Dyadic
    exact: bool


def _snapshot(computer, budget, depth):
    return explore(
        computer,
        budget or lab_setting('DEFAULT_BUDGET'),
        lab_setting('DEFAULT_DEPTH') if depth is None else depth,
    )


def omega_exact(computer, budget=None, depth=None):
    if isinstance(computer, TableComputer):
        total = ZERO
        for key in computer.table:
            total += Dyadic.unit(len(key))
        return OmegaValue(total, True)
    snapshot = _snapshot(computer, budget, depth)
    if not snapshot.closed:
        raise NotClosedWorld(
            f'domain of {snapshot.computer} not certified finite '
            f'({len(snapshot.exhausted)} exhausted, {len(snapshot.pruned)} pruned nodes)'
        )
    return OmegaValue(snapshot.lower, True)


def complexity(s, computer, budget=None, depth=None):
    """H_C(s) with the canonically first shortest program as witness."""
    snapshot = _snapshot(computer, budget, depth)
    producers = [entry.input for entry in snapshot.entries if entry.output == s]
    if not producers:
        return Complexity(None, None, snapshot.closed)
    witness = min(producers, key=canonical_key)
    return Complexity(len(witness), witness, snapshot.complete_to(len(witness)))


def pair_complexity(s, t, computer, budget=None, depth=None):
    return complexity(pairing(s, t), computer, budget, depth)


def output_probability(s, computer, budget=None, depth=None):
    snapshot = _snapshot(computer, budget, depth)
    total = ZERO
    for entry in snapshot.entries:
        if entry.output == s:
            total += Dyadic.unit(len(entry.input))
    return Probability(total, snapshot.closed)
