"""Online Kraft-Chaitin codeword allocation and exact Kraft partial sums."""
import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Tuple

from .bits import ZERO, Dyadic
from .exceptions import KraftExceeded

logger = logging.getLogger(__name__)

HALF = Dyadic.unit(1)


class LengthKind(enum.Enum):
    TABLE = 'table'
    FLOORLOG = 'floorlog'
    CONSTANT = 'const'


@dataclass(frozen=True)
class LengthFunction:
    """A total f: N+ -> N.

    Tables repeat their last value past their end.
    """

    kind: LengthKind
    constant: int = 0
    multiplier: Fraction = Fraction(0)
    table: Tuple[int, ...] = ()
    source: str = ''

    @classmethod
    def const(cls, k):
        if k < 0:
            raise ValueError(f'lengths are natural numbers, got {k}')
        return cls(LengthKind.CONSTANT, constant=k)

    @classmethod
    def floorlog(cls, a):
        a = Fraction(a)
        if a < 0:
            raise ValueError(f'multiplier must be non-negative, got {a}')
        return cls(LengthKind.FLOORLOG, multiplier=a)

    @classmethod
    def from_table(cls, values, source=''):
        values = tuple(int(v) for v in values)
        if not values or min(values) < 0:
            raise ValueError('a length table needs at least one natural number')
        return cls(LengthKind.TABLE, table=values, source=source)

    @classmethod
    def parse(cls, text):
        kind, _, argument = text.strip().partition(':')
        if kind == 'const':
            return cls.const(int(argument))
        if kind == 'floorlog':
            return cls.floorlog(Fraction(argument))
        if kind == 'table':
            path = Path(argument)
            return cls.from_table(path.read_text().split(), source=argument)
        raise ValueError(f'unknown length function {text!r}; use const:k, floorlog:a or table:<path>')

    def __call__(self, n):
        if n < 1:
            raise ValueError(f'length functions are defined on N+, got {n}')
        if self.kind is LengthKind.CONSTANT:
            return self.constant
        if self.kind is LengthKind.TABLE:
            return self.table[min(n, len(self.table)) - 1]
        # floor(p/q * log2 n) = floor(floor(log2 n^p) / q)
        p, q = self.multiplier.numerator, self.multiplier.denominator
        return ((n ** p).bit_length() - 1) // q

    def upper_bound(self):
        """sup f when it is finite and known, else None."""
        if self.kind is LengthKind.CONSTANT:
            return self.constant
        if self.kind is LengthKind.TABLE:
            return max(self.table)
        return 0 if self.multiplier == 0 else None

    def __str__(self):
        if self.kind is LengthKind.CONSTANT:
            return f'const:{self.constant}'
        if self.kind is LengthKind.FLOORLOG:
            return f'floorlog:{self.multiplier}'
        return f'table:{self.source}'


class Allocator:
    """Issues prefix-free codewords of requested lengths, one request at a time.

    Best fit: the longest free node that can host the request (leftmost on
    ties) is split down its left spine. Free nodes then keep pairwise
    distinct lengths, so a request fails exactly when the Kraft sum would
    pass 1.
    """

    def __init__(self):
        self.free_nodes = ['']
        self.issued = []
        self.kraft_spent = ZERO

    def allocate(self, length, n=None):
        if length < 0:
            raise ValueError(f'codeword length must be natural, got {length}')
        hosts = [node for node in self.free_nodes if len(node) <= length]
        if not hosts:
            raise KraftExceeded(length, self.kraft_spent)
        node = min(hosts, key=lambda h: (-len(h), h))
        self.free_nodes.remove(node)
        for depth in range(length - len(node)):
            self.free_nodes.append(node + '0' * depth + '1')
        codeword = node + '0' * (length - len(node))
        self.kraft_spent += Dyadic.unit(length)
        self.issued.append((len(self.issued) + 1 if n is None else n, codeword))
        return codeword

    @property
    def codewords(self):
        return [codeword for _, codeword in self.issued]


def allocate_for(f, shift, count):
    """g(1), ..., g(count) with |g(n)| = f(n) + shift."""
    allocator = Allocator()
    for n in range(1, count + 1):
        allocator.allocate(f(n) + shift, n)
    return allocator.codewords


def _first_reaching(f, k, limit):
    # smallest n in [1, limit] with f(n) >= k; f is non-decreasing
    low, high = 1, limit
    while low < high:
        middle = (low + high) // 2
        if f(middle) >= k:
            high = middle
        else:
            low = middle + 1
    return low


def kraft_partial_sum(f, N):
    """Exact sum of 2^-f(n) for n = 1..N."""
    if N <= 0:
        return ZERO
    if f.kind is LengthKind.CONSTANT:
        return Dyadic(N, f.constant)
    if f.kind is LengthKind.TABLE:
        total = ZERO
        for n in range(1, N + 1):
            total += Dyadic.unit(f(n))
        return total
    # floorlog is non-decreasing: sum block by block of equal value
    total = ZERO
    start = 1
    while start <= N:
        k = f(start)
        if f(N) == k:
            end = N
        else:
            end = _first_reaching(f, k + 1, N) - 1
        total += Dyadic(end - start + 1, k)
        start = end + 1
    return total


def choose_shift(f, horizon):
    """Smallest d0 whose shifted partial sum over the horizon stays <= 1/2."""
    total = kraft_partial_sum(f, horizon)
    shift = 0
    while total * Dyadic.unit(shift) > HALF:
        shift += 1
    logger.debug('Kraft shift for %s over horizon %d: %d', f, horizon, shift)
    return shift
