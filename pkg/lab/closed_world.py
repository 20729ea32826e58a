"""Closed-world computers whose domains are known in full.

Tables are finite and closed outright. The two L-programs loop forever on
every input outside their (infinite) domains, which the VM certifies, so
their domains are exactly known too and their Omega is non-dyadic.
"""
from fractions import Fraction
from pathlib import Path

from .bits import Dyadic, strings_of_length
from .computers import ProgramComputer, TableComputer
from .conf import lab_setting
from .vm import assemble

TABLES = {
    'three-leaves': {'0': '0', '10': '1', '11': '00'},
    'two-halves': {'00': '', '01': '1'},
    'zero-ten': {'0': '1', '10': '0'},
    'unary4': {'1': '', '01': '0', '001': '1', '0001': '00'},
    'cube': {w: w for w in strings_of_length(3)},
    'hexad': {w: w[::-1] for w in strings_of_length(6)},
    'zero-five': {'0' + w: w[:2] for w in strings_of_length(5)},
    'sparse': {'1': '1', '011': '0', '0101': '', '00000': '11'},
    'eleven-sixteenths': {'0': '0', '101': '1', '1101': '10'},
    'deep-pair': {'000000': '0', '111111': '1'},
    'mixed': {'00': '0', '010': '1', '011': '10', '1': '11'},
}

PROGRAMS = {
    'echo-one': 'READ; OUTR; HALT',
    # halts on 0^(2k) 1
    'even-zeros': 'READ; JZ 3; HALT; READ; JZ 0; JMP 5',
    # halts on 0^(3k) 1
    'zeros-mod3': 'READ; JZ 3; HALT; READ; JZ 6; JMP 5; READ; JZ 0; JMP 8',
}

# Exact halting probabilities of the infinite-domain programs
PROGRAM_OMEGAS = {
    'even-zeros': Fraction(2, 3),
    'zeros-mod3': Fraction(4, 7),
}


def table(name):
    return TableComputer(TABLES[name], name=name)


def program(name):
    return ProgramComputer(assemble(PROGRAMS[name]), name=name)


def table_omega(name):
    total = Dyadic(0)
    for key in TABLES[name]:
        total += Dyadic.unit(len(key))
    return total


def program_domain(name, n):
    """Dom |n of a fixture program, by its defining pattern."""
    if name == 'echo-one':
        return frozenset(w for w in ('0', '1') if len(w) <= n)
    period = {'even-zeros': 2, 'zeros-mod3': 3}[name]
    return frozenset('0' * (period * k) + '1' for k in range(n) if period * k + 1 <= n)


def closed_tables():
    return [table(name) for name in TABLES]


def fixture_dir():
    configured = lab_setting('FIXTURE_DIR')
    if configured:
        return Path(configured)
    return Path(__file__).resolve().parent / 'fixtures' / 'closed_world'
