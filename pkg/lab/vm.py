"""The base language L: a two-stack bit machine that reads its input on demand.

A run only counts as halting when HALT is reached after every input bit has
been read, so the halting inputs of any program form a prefix-free set.
"""
import enum
import logging
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from .bits import EMPTY, check_bits, elias_gamma_decode, elias_gamma_encode
from .conf import clamp_budget

logger = logging.getLogger(__name__)


class Op(enum.Enum):
    READ = '0000'
    PUSH1 = '0001'
    PUSH2 = '0010'
    POP1 = '0011'
    POP2 = '0100'
    NOTR = '0101'
    OUTR = '0110'
    JZ = '0111'
    JMP = '1000'
    HALT = '1001'

    @property
    def takes_target(self):
        return self in (Op.JZ, Op.JMP)


_OPCODES = {op.value: op for op in Op}


@dataclass(frozen=True)
class Instruction:
    op: Op
    target: Optional[int] = None

    def __str__(self):
        if self.op.takes_target:
            return f'{self.op.name} {self.target}'
        return self.op.name


@dataclass(frozen=True)
class Program:
    instructions: Tuple[Instruction, ...]
    source_bits: str = EMPTY
    diverge_marker: bool = False

    def __len__(self):
        return len(self.instructions)

    def __str__(self):
        return disassemble(self)


# Stands in for every malformed serialization; loops on its own pc forever.
DIVERGE_MARKER = Program((Instruction(Op.JMP, 0),), EMPTY, diverge_marker=True)


def serialize_program(instructions):
    parts = []
    for instruction in instructions:
        parts.append(instruction.op.value)
        if instruction.op.takes_target:
            parts.append(elias_gamma_encode(instruction.target + 1))
    return ''.join(parts)


def parse_program(bits):
    """Decode a serialization; anything malformed becomes DIVERGE_MARKER."""
    check_bits(bits)
    instructions = []
    position = 0
    while position < len(bits):
        opcode = bits[position:position + 4]
        op = _OPCODES.get(opcode)
        if op is None:
            return DIVERGE_MARKER
        position += 4
        target = None
        if op.takes_target:
            decoded = elias_gamma_decode(bits, position)
            if decoded is None:
                return DIVERGE_MARKER
            target, position = decoded[0] - 1, decoded[1]
        instructions.append(Instruction(op, target))
    if not instructions:
        return DIVERGE_MARKER
    if any(i.op.takes_target and i.target >= len(instructions) for i in instructions):
        return DIVERGE_MARKER
    return Program(tuple(instructions), bits)


def assemble(text):
    """Build a program from text such as ``READ; JZ 0; OUTR; HALT``."""
    instructions = []
    for token in text.replace('\n', ';').split(';'):
        token = token.strip()
        if not token:
            continue
        name, _, argument = token.partition(' ')
        try:
            op = Op[name.strip().upper()]
        except KeyError:
            raise ValueError(f'unknown instruction {name!r}') from None
        if op.takes_target:
            if not argument.strip():
                raise ValueError(f'{op.name} needs a target')
            instructions.append(Instruction(op, int(argument)))
        elif argument.strip():
            raise ValueError(f'{op.name} takes no operand')
        else:
            instructions.append(Instruction(op))
    for instruction in instructions:
        if instruction.op.takes_target and not 0 <= instruction.target < len(instructions):
            raise ValueError(f'jump target {instruction.target} out of range')
    if not instructions:
        raise ValueError('empty program')
    return Program(tuple(instructions), serialize_program(instructions))


def disassemble(program):
    return '; '.join(str(i) for i in program.instructions)


@dataclass(frozen=True)
class MachineState:
    pc: int = 0
    reg: int = 0
    stack1: Tuple[int, ...] = ()
    stack2: Tuple[int, ...] = ()
    consumed: int = 0
    output: str = EMPTY
    steps: int = 0
    halted: bool = False


class InputRequest:
    def __repr__(self):
        return 'INPUT_REQUEST'


INPUT_REQUEST = InputRequest()


def step(state, program, next_input_bit=None):
    """One transition; returns INPUT_REQUEST when READ has no bit to take."""
    instruction = program.instructions[state.pc]
    op = instruction.op
    following = state.pc + 1
    ticked = state.steps + 1

    if op is Op.READ:
        if next_input_bit is None:
            return INPUT_REQUEST
        return replace(state, reg=int(next_input_bit), consumed=state.consumed + 1, pc=following, steps=ticked)
    if op is Op.PUSH1:
        return replace(state, stack1=state.stack1 + (state.reg,), pc=following, steps=ticked)
    if op is Op.PUSH2:
        return replace(state, stack2=state.stack2 + (state.reg,), pc=following, steps=ticked)
    if op is Op.POP1:
        if not state.stack1:
            return replace(state, reg=0, pc=following, steps=ticked)
        return replace(state, reg=state.stack1[-1], stack1=state.stack1[:-1], pc=following, steps=ticked)
    if op is Op.POP2:
        if not state.stack2:
            return replace(state, reg=0, pc=following, steps=ticked)
        return replace(state, reg=state.stack2[-1], stack2=state.stack2[:-1], pc=following, steps=ticked)
    if op is Op.NOTR:
        return replace(state, reg=1 - state.reg, pc=following, steps=ticked)
    if op is Op.OUTR:
        return replace(state, output=state.output + str(state.reg), pc=following, steps=ticked)
    if op is Op.JZ:
        return replace(state, pc=instruction.target if state.reg == 0 else following, steps=ticked)
    if op is Op.JMP:
        return replace(state, pc=instruction.target, steps=ticked)
    return replace(state, halted=True, steps=ticked)


class Outcome(enum.Enum):
    HALTED = 'halted'
    HALTED_EARLY = 'halted-early'
    NEEDS_INPUT = 'needs-input'
    BUDGET_EXHAUSTED = 'budget-exhausted'
    DIVERGED = 'diverged'


@dataclass(frozen=True)
class RunOutcome:
    kind: Outcome
    output: str = EMPTY
    consumed: int = 0
    steps: int = 0

    @property
    def halted(self):
        return self.kind is Outcome.HALTED

    @classmethod
    def halted_with(cls, output, consumed, steps):
        return cls(Outcome.HALTED, output, consumed, steps)

    @classmethod
    def halted_early(cls, consumed, steps):
        return cls(Outcome.HALTED_EARLY, EMPTY, consumed, steps)

    @classmethod
    def needs_input(cls, consumed, steps):
        return cls(Outcome.NEEDS_INPUT, EMPTY, consumed, steps)

    @classmethod
    def exhausted(cls, consumed, steps):
        return cls(Outcome.BUDGET_EXHAUSTED, EMPTY, consumed, steps)

    @classmethod
    def diverged(cls, consumed, steps):
        return cls(Outcome.DIVERGED, EMPTY, consumed, steps)

    def __str__(self):
        if self.halted:
            return f'{self.kind.value} output={self.output or "^"} consumed={self.consumed} steps={self.steps}'
        return f'{self.kind.value} consumed={self.consumed} steps={self.steps}'


def _execute(program, input_bits, budget, trace=None):
    budget = clamp_budget(budget)
    state = MachineState()
    # Configurations seen since the last READ; a repeat means a closed loop.
    seen = set()
    while True:
        instruction = program.instructions[state.pc]
        bit = None
        if instruction.op is Op.READ:
            if state.consumed == len(input_bits):
                return RunOutcome.needs_input(state.consumed, state.steps), state
            bit = input_bits[state.consumed]
            seen.clear()
        else:
            key = (state.pc, state.reg, state.stack1, state.stack2)
            if key in seen:
                return RunOutcome.diverged(state.consumed, state.steps), state
            seen.add(key)
        if state.steps >= budget:
            return RunOutcome.exhausted(state.consumed, state.steps), state
        if trace is not None:
            trace.append(state)
        state = step(state, program, bit)
        if state.halted:
            if state.consumed == len(input_bits):
                return RunOutcome.halted_with(state.output, state.consumed, state.steps), state
            return RunOutcome.halted_early(state.consumed, state.steps), state


def run(program, input_bits, budget):
    check_bits(input_bits)
    outcome, _ = _execute(program, input_bits, budget)
    return outcome


HISTORY_COUNT_BITS = 8
HISTORY_FIELD_BITS = 16
HISTORY_STATE_BITS = 3 * HISTORY_FIELD_BITS + 1
HISTORY_MAX_STATES = 2 ** HISTORY_COUNT_BITS - 1


@dataclass(frozen=True)
class StateRecord:
    pc: int
    reg: int
    consumed: int
    output_length: int


def history(program, input_bits, budget):
    """Serialized computation history, or None when the input is not in the domain.

    One record per executed transition, taken before the transition.
    """
    check_bits(input_bits)
    trace = []
    outcome, _ = _execute(program, input_bits, budget, trace)
    if not outcome.halted or len(trace) > HISTORY_MAX_STATES:
        return None
    limit = 2 ** HISTORY_FIELD_BITS
    parts = [format(len(trace), f'0{HISTORY_COUNT_BITS}b')]
    for state in trace:
        if state.pc >= limit or state.consumed >= limit or len(state.output) >= limit:
            return None
        parts.append(format(state.pc, f'0{HISTORY_FIELD_BITS}b'))
        parts.append(str(state.reg))
        parts.append(format(state.consumed, f'0{HISTORY_FIELD_BITS}b'))
        parts.append(format(len(state.output), f'0{HISTORY_FIELD_BITS}b'))
    return ''.join(parts)


def decode_history(bits):
    if len(bits) < HISTORY_COUNT_BITS:
        return None
    count = int(bits[:HISTORY_COUNT_BITS], 2)
    if len(bits) != HISTORY_COUNT_BITS + count * HISTORY_STATE_BITS:
        return None
    records = []
    position = HISTORY_COUNT_BITS
    width = HISTORY_FIELD_BITS
    for _ in range(count):
        pc = int(bits[position:position + width], 2)
        reg = int(bits[position + width])
        consumed = int(bits[position + width + 1:position + 2 * width + 1], 2)
        output_length = int(bits[position + 2 * width + 1:position + HISTORY_STATE_BITS], 2)
        records.append(StateRecord(pc, reg, consumed, output_length))
        position += HISTORY_STATE_BITS
    return records


def history_steps(bits):
    """Step count a history string claims, or None if it is not one."""
    records = decode_history(bits)
    return None if records is None else len(records)
