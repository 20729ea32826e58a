"""Computers, the registry and the universal dispatcher U'(gamma(i) p) = C_i(p)."""
import enum
import functools
import logging
from dataclasses import dataclass

from .bits import (
    check_bits,
    elias_gamma_decode,
    elias_gamma_encode,
    first_prefix_pair,
    nat_to_string,
    strings_of_length,
)
from .conf import clamp_budget, lab_setting
from .exceptions import BudgetExhaustedError, PrefixViolation
from . import vm
from .vm import Outcome, RunOutcome

logger = logging.getLogger(__name__)


class ComputerKind(enum.Enum):
    LPROGRAM = 'lprogram'
    NATIVE = 'native'
    TABLE = 'table'
    UNIVERSAL = 'universal'


def encode_record(input_bits, outcome):
    return (
        elias_gamma_encode(len(input_bits) + 1) + input_bits
        + elias_gamma_encode(outcome.steps + 1)
        + elias_gamma_encode(len(outcome.output) + 1) + outcome.output
    )


def decode_record(bits):
    """Split a native history record into (input, steps, output) or None."""
    decoded = elias_gamma_decode(bits)
    if decoded is None:
        return None
    length, position = decoded[0] - 1, decoded[1]
    input_bits = bits[position:position + length]
    position += length
    if len(input_bits) != length:
        return None
    decoded = elias_gamma_decode(bits, position)
    if decoded is None:
        return None
    steps, position = decoded[0] - 1, decoded[1]
    decoded = elias_gamma_decode(bits, position)
    if decoded is None:
        return None
    length, position = decoded[0] - 1, decoded[1]
    if len(bits) != position + length:
        return None
    return input_bits, steps, bits[position:]


class ComputerHandle:
    """A computer: a partial function on bitstrings with a prefix-free domain.

    ``run`` follows the demand protocol of the VM: NEEDS_INPUT when the input
    is a proper prefix of what the computer would read, HALTED only when the
    whole input was read.
    """

    kind = ComputerKind.NATIVE
    name = 'computer'

    def run(self, input_bits, budget):
        raise NotImplementedError

    def history(self, input_bits, budget):
        outcome = self.run(input_bits, budget)
        if not outcome.halted:
            return None
        return encode_record(input_bits, outcome)

    def history_steps(self, bits):
        record = decode_record(bits)
        return None if record is None else record[1]

    def payload(self):
        return self.name

    def __str__(self):
        return f'{self.kind.value}:{self.name}'


class ProgramComputer(ComputerHandle):
    kind = ComputerKind.LPROGRAM

    def __init__(self, program, name=''):
        self.program = program
        self.name = name or (program.source_bits or 'diverge')

    def run(self, input_bits, budget):
        return vm.run(self.program, input_bits, budget)

    def history(self, input_bits, budget):
        return vm.history(self.program, input_bits, budget)

    def history_steps(self, bits):
        return vm.history_steps(bits)

    def payload(self):
        return self.program.source_bits


class TableComputer(ComputerHandle):
    """A finite prefix-free map; every lookup costs one step."""

    kind = ComputerKind.TABLE

    def __init__(self, table, name='table'):
        table = {check_bits(k): check_bits(v) for k, v in dict(table).items()}
        clash = first_prefix_pair(table)
        if clash is not None:
            raise PrefixViolation(*clash)
        self.table = table
        self.name = name
        self._proper_prefixes = {key[:i] for key in table for i in range(len(key))}

    @property
    def domain(self):
        return frozenset(self.table)

    def run(self, input_bits, budget):
        clamp_budget(budget)
        for length in range(len(input_bits) + 1):
            head = input_bits[:length]
            if head in self.table:
                if length == len(input_bits):
                    return RunOutcome.halted_with(self.table[head], length, 1)
                return RunOutcome.halted_early(length, 1)
            if head not in self._proper_prefixes:
                return RunOutcome.diverged(length, 0)
        return RunOutcome.needs_input(len(input_bits), 0)

    def payload(self):
        return self.name


class NativeComputer(ComputerHandle):
    """Host procedure honouring the self-delimiting contract."""

    kind = ComputerKind.NATIVE


def numeral_table(width, name=''):
    """Table sending each width-bit string w to the natural number int(w, 2)."""
    return TableComputer(
        {w: nat_to_string(int(w, 2) if w else 0) for w in strings_of_length(width)},
        name=name or f'numerals{width}',
    )


@dataclass(frozen=True)
class Registration:
    index: int
    constant: int
    handle: ComputerHandle

    @property
    def code(self):
        return elias_gamma_encode(self.index)


class Registry:
    """Append-only list of computers indexed from 1."""

    def __init__(self, handles=()):
        self._entries = []
        self._cached_dispatch = functools.lru_cache(maxsize=lab_setting('DISPATCH_CACHE_SIZE'))(self._dispatch)
        for handle in handles:
            self.register(handle)

    def register(self, handle):
        self._entries.append(handle)
        index = len(self._entries)
        registration = Registration(index, len(elias_gamma_encode(index)), handle)
        logger.debug('registered %s as entry %d (d=%d)', handle, index, registration.constant)
        return registration

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        for index, handle in enumerate(self._entries, start=1):
            yield Registration(index, len(elias_gamma_encode(index)), handle)

    def __getitem__(self, index):
        if not 1 <= index <= len(self._entries):
            raise KeyError(index)
        return self._entries[index - 1]

    def registration(self, index):
        return Registration(index, len(elias_gamma_encode(index)), self[index])

    def index_of(self, handle):
        for index, entry in enumerate(self._entries, start=1):
            if entry is handle:
                return index
        raise KeyError(handle)

    @property
    def universal(self):
        return UniversalComputer(self)

    def universal_run(self, input_bits, budget):
        # the size is part of the key: registering a computer changes U'
        return self._cached_dispatch(len(self._entries), input_bits, clamp_budget(budget))

    def _dispatch(self, size, input_bits, budget):
        ones = 0
        while ones < len(input_bits) and input_bits[ones] == '1':
            ones += 1
        # Having read k ones the index is at least 2**k.
        if 2 ** ones > size:
            return RunOutcome.diverged(ones, 0)
        if ones == len(input_bits):
            return RunOutcome.needs_input(ones, 0)
        header = 2 * ones + 1
        low = input_bits[ones + 1:header]
        smallest = int('1' + low + '0' * (ones - len(low)), 2)
        if smallest > size:
            return RunOutcome.diverged(ones + 1 + len(low), 0)
        if len(low) < ones:
            return RunOutcome.needs_input(len(input_bits), 0)
        outcome = self._entries[smallest - 1].run(input_bits[header:], budget)
        return RunOutcome(outcome.kind, outcome.output, outcome.consumed + header, outcome.steps)


class UniversalComputer(ComputerHandle):
    kind = ComputerKind.UNIVERSAL
    name = 'U'

    def __init__(self, registry):
        self.registry = registry

    def run(self, input_bits, budget):
        return self.registry.universal_run(input_bits, budget)

    def __eq__(self, other):
        return isinstance(other, UniversalComputer) and other.registry is self.registry

    def __hash__(self):
        return id(self.registry)


def run_to_halt(computer, input_bits, budget=None):
    """Run an input known to halt, under the global cap."""
    outcome = computer.run(input_bits, budget or lab_setting('MAX_STEPS'))
    if outcome.kind is Outcome.BUDGET_EXHAUSTED:
        raise BudgetExhaustedError(f'{input_bits or "^"} did not halt within {outcome.steps} steps')
    return outcome
