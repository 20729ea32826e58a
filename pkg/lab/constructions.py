"""Native computers built by the oracle reductions.

Each one answers the demand protocol so it can be explored and dispatched
through the universal computer like any registered entry.
"""
import logging

from .bits import Dyadic, nat_to_string, string_to_nat
from .computers import NativeComputer
from .conf import clamp_budget
from .vm import Outcome, RunOutcome

logger = logging.getLogger(__name__)


class HistoryComputer(NativeComputer):
    """D with Dom D = Dom C and D(p) = the computation history of C on p."""

    def __init__(self, target, name=''):
        self.target = target
        self.name = name or f'history({target.name})'

    def run(self, input_bits, budget):
        outcome = self.target.run(input_bits, budget)
        if not outcome.halted:
            return outcome
        bits = self.target.history(input_bits, budget)
        if bits is None:
            # halted, but the history does not fit its format
            return RunOutcome.diverged(outcome.consumed, outcome.steps)
        return RunOutcome.halted_with(bits, outcome.consumed, outcome.steps)


class EnumerationIndexComputer(NativeComputer):
    """D with Dom D = Dom C and D(p_i) = i for a fixed enumeration p0, p1, ..."""

    def __init__(self, target, enumeration, name=''):
        self.target = target
        self.enumeration = enumeration
        self.name = name or f'index({target.name})'

    def run(self, input_bits, budget):
        outcome = self.target.run(input_bits, budget)
        if not outcome.halted:
            return outcome
        index = self.enumeration.index_of(input_bits)
        return RunOutcome.halted_with(nat_to_string(index), outcome.consumed, outcome.steps + 1)


def read_program(universe, bits, budget):
    """Find the U-program at the head of ``bits`` by feeding it bit by bit.

    Returns the deciding RunOutcome (its ``consumed`` is the program length)
    or a NEEDS_INPUT outcome when every prefix still asks for more.
    """
    for length in range(len(bits) + 1):
        outcome = universe.run(bits[:length], budget)
        if outcome.kind is not Outcome.NEEDS_INPUT:
            return outcome
    return RunOutcome.needs_input(len(bits), 0)


class ComparisonComputer(NativeComputer):
    """Accepts head . q . s when U(q) = l, |head q s| = n - l and 0.s is below alpha.

    The head fixes n. For an exactly known alpha the test is 0.s <= frac(alpha);
    for a monotone approximation it is 0.s < h(k) - floor(alpha) for some k,
    searched one step per k.
    """

    def __init__(self, universe, alpha, name):
        self.universe = universe
        self.alpha = alpha
        self.name = name

    def read_head(self, input_bits, budget):
        """Return (outcome, n, head_length, steps); outcome None once n is known."""
        raise NotImplementedError

    def run(self, input_bits, budget):
        budget = clamp_budget(budget)
        outcome, n, head_length, steps = self.read_head(input_bits, budget)
        if outcome is not None:
            return outcome
        rest = input_bits[head_length:]
        found = read_program(self.universe, rest, budget)
        if found.kind is Outcome.NEEDS_INPUT:
            return RunOutcome.needs_input(len(input_bits), steps)
        if found.kind is Outcome.BUDGET_EXHAUSTED:
            return RunOutcome.exhausted(head_length + found.consumed, steps + found.steps)
        if not found.halted:
            return RunOutcome.diverged(head_length + found.consumed, steps + found.steps)
        steps += found.steps
        total = n - string_to_nat(found.output)
        prefix_length = head_length + found.consumed
        if total < prefix_length:
            return RunOutcome.diverged(prefix_length, steps)
        if len(input_bits) < total:
            return RunOutcome.needs_input(len(input_bits), steps)
        decided = self._compare(input_bits[prefix_length:total], total, steps, budget)
        if decided.halted and len(input_bits) > total:
            return RunOutcome.halted_early(total, decided.steps)
        return decided

    def _compare(self, s, consumed, steps, budget):
        point = Dyadic.from_bits(s).to_fraction()
        if self.alpha.is_exact:
            if point <= self.alpha.exact_value() - self.alpha.floor():
                return RunOutcome.halted_with('', consumed, steps + 1)
            return RunOutcome.diverged(consumed, steps + 1)
        # without a known limit the integer part is taken to be 0
        k = 0
        while steps < budget:
            k += 1
            steps += 1
            if point < self.alpha.approximation(k):
                return RunOutcome.halted_with('', consumed, steps)
        return RunOutcome.exhausted(consumed, steps)


class ThresholdComputer(ComparisonComputer):
    """Comparison computer whose head is a Kraft-Chaitin codeword g(n)."""

    def __init__(self, universe, codewords, alpha, name=''):
        super().__init__(universe, alpha, name or f'threshold({alpha})')
        self.codewords = tuple(codewords)
        self._index = {codeword: n for n, codeword in enumerate(self.codewords, start=1)}
        self._proper_prefixes = {c[:i] for c in self.codewords for i in range(len(c))}

    def read_head(self, input_bits, budget):
        for length in range(len(input_bits) + 1):
            head = input_bits[:length]
            if head in self._index:
                return None, self._index[head], length, 0
            if head not in self._proper_prefixes:
                return RunOutcome.diverged(length, 0), None, length, 0
        return RunOutcome.needs_input(len(input_bits), 0), None, len(input_bits), 0


class ShortProgramThresholdComputer(ComparisonComputer):
    """Comparison computer whose head is a U-program for n."""

    def __init__(self, universe, alpha, name=''):
        super().__init__(universe, alpha, name or f'short-threshold({alpha})')

    def read_head(self, input_bits, budget):
        found = read_program(self.universe, input_bits, budget)
        if found.kind is Outcome.NEEDS_INPUT:
            return RunOutcome.needs_input(len(input_bits), 0), None, len(input_bits), 0
        if found.kind is Outcome.BUDGET_EXHAUSTED:
            return RunOutcome.exhausted(found.consumed, found.steps), None, found.consumed, found.steps
        if not found.halted:
            return RunOutcome.diverged(found.consumed, found.steps), None, found.consumed, found.steps
        return None, string_to_nat(found.output), found.consumed, found.steps
