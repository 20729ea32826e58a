"""Bitstrings, the string/number identification, exact dyadic arithmetic and
real prefixes.

Bitstrings are plain ``str`` values over the characters ``'0'`` and ``'1'``;
the empty string is the empty bitstring.
"""
import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from .exceptions import NotClosedWorld

EMPTY = ''
EMPTY_TOKEN = '^'


def is_bits(value):
    return isinstance(value, str) and all(ch in '01' for ch in value)


def check_bits(value):
    if not is_bits(value):
        raise ValueError(f'not a bitstring: {value!r}')
    return value


# Sort key for the order lambda, 0, 1, 00, 01, 10, 11, 000, ...
def canonical_key(s):
    return (len(s), s)


def canonical_sorted(strings: Iterable[str]):
    return sorted(strings, key=canonical_key)


def string_to_nat(s):
    return int('1' + check_bits(s), 2) - 1


def nat_to_string(n):
    if n < 0:
        raise ValueError(f'natural number expected, got {n}')
    return bin(n + 1)[3:]


def strings_of_length(length) -> Iterator[str]:
    for value in range(2 ** length):
        yield format(value, f'0{length}b') if length else EMPTY


def strings_up_to(length) -> Iterator[str]:
    for n in range(0, length + 1):
        yield from strings_of_length(n)


def encode_bits(s):
    return s if s else EMPTY_TOKEN


def decode_bits(token):
    token = token.strip()
    if token == EMPTY_TOKEN:
        return EMPTY
    if not token:
        raise ValueError('empty token; the empty bitstring is written ^')
    return check_bits(token)


def restrict(strings: Iterable[str], n):
    """Members of length at most n; nothing for negative n."""
    if n < 0:
        return frozenset()
    return frozenset(s for s in strings if len(s) <= n)


def first_prefix_pair(strings: Iterable[str]):
    # In lexicographic order a prefix sits right before some extension of it,
    # so only neighbours need checking.
    ordered = sorted(set(strings))
    for left, right in zip(ordered, ordered[1:]):
        if right.startswith(left):
            return left, right
    return None


def is_prefix_free(strings: Iterable[str]):
    return first_prefix_pair(strings) is None


def cantor_pair(x, y):
    return (x + y) * (x + y + 1) // 2 + y


def cantor_unpair(z):
    w = (math.isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def pairing(s, t):
    return nat_to_string(cantor_pair(string_to_nat(s), string_to_nat(t)))


def unpairing(u):
    x, y = cantor_unpair(string_to_nat(u))
    return nat_to_string(x), nat_to_string(y)


def elias_gamma_encode(i):
    """1^k 0 followed by the k low bits of i, where k = floor(log2 i)."""
    if i < 1:
        raise ValueError(f'Elias gamma codes start at 1, got {i}')
    digits = bin(i)[2:]
    k = len(digits) - 1
    return '1' * k + '0' + digits[1:]


def elias_gamma_decode(bits, start=0):
    """Decode one code word at ``start``.

    Returns ``(value, end)`` or ``None`` when the bits run out first.
    """
    k = 0
    position = start
    while position < len(bits) and bits[position] == '1':
        k += 1
        position += 1
    if position >= len(bits):
        return None
    position += 1
    if position + k > len(bits):
        return None
    value = int('1' + bits[position:position + k], 2)
    return value, position + k


@functools.total_ordering
class Dyadic:
    """An exact number numerator / 2**exponent kept in lowest terms."""

    __slots__ = ('numerator', 'exponent')

    def __init__(self, numerator=0, exponent=0):
        if exponent < 0:
            raise ValueError(f'exponent must be a natural number, got {exponent}')
        if numerator == 0:
            exponent = 0
        elif exponent:
            twos = (numerator & -numerator).bit_length() - 1
            shift = min(twos, exponent)
            numerator >>= shift
            exponent -= shift
        object.__setattr__(self, 'numerator', numerator)
        object.__setattr__(self, 'exponent', exponent)

    def __setattr__(self, name, value):
        raise AttributeError('Dyadic values are immutable')

    @classmethod
    def unit(cls, k):
        """2**-k."""
        return cls(1, k)

    @classmethod
    def from_fraction(cls, value):
        value = Fraction(value)
        denominator = value.denominator
        if denominator & (denominator - 1):
            raise ValueError(f'{value} is not dyadic')
        return cls(value.numerator, denominator.bit_length() - 1)

    @classmethod
    def from_bits(cls, bits):
        """The binary fraction 0.bits."""
        check_bits(bits)
        return cls(int(bits, 2) if bits else 0, len(bits))

    @classmethod
    def parse(cls, text):
        numerator, _, power = text.strip().partition('/2^')
        if not power:
            return cls(int(numerator))
        return cls(int(numerator), int(power))

    def to_fraction(self):
        return Fraction(self.numerator, 1 << self.exponent)

    def _aligned(self, other):
        k = max(self.exponent, other.exponent)
        return self.numerator << (k - self.exponent), other.numerator << (k - other.exponent), k

    def __add__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        a, b, k = self._aligned(other)
        return Dyadic(a + b, k)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        a, b, k = self._aligned(other)
        return Dyadic(a - b, k)

    def __rsub__(self, other):
        if isinstance(other, int):
            return Dyadic(other) - self
        return NotImplemented

    def __neg__(self):
        return Dyadic(-self.numerator, self.exponent)

    def __mul__(self, other):
        if isinstance(other, int):
            return Dyadic(self.numerator * other, self.exponent)
        if isinstance(other, Dyadic):
            return Dyadic(self.numerator * other.numerator, self.exponent + other.exponent)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.numerator == other.numerator and self.exponent == other.exponent
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Dyadic):
            a, b, _ = self._aligned(other)
            return a < b
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() < other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def __bool__(self):
        return self.numerator != 0

    def __repr__(self):
        return f'Dyadic({self.numerator}, {self.exponent})'

    def __str__(self):
        return f'{self.numerator}/2^{self.exponent}'


ZERO = Dyadic(0)
ONE = Dyadic(1)


class RealKind(enum.Enum):
    EXACT = 'exact'
    MONOTONE = 'monotone'


@dataclass(frozen=True)
class RealSource:
    """A real given exactly, or as the limit of non-decreasing rationals h(k)."""

    kind: RealKind
    value: Optional[Fraction] = None
    sequence: Optional[Callable[[int], Fraction]] = None
    label: str = ''

    @classmethod
    def exact(cls, value, label=''):
        if isinstance(value, Dyadic):
            value = value.to_fraction()
        return cls(RealKind.EXACT, value=Fraction(value), label=label or str(Fraction(value)))

    @classmethod
    def monotone(cls, sequence, limit=None, label='h'):
        if isinstance(limit, Dyadic):
            limit = limit.to_fraction()
        return cls(
            RealKind.MONOTONE,
            value=None if limit is None else Fraction(limit),
            sequence=sequence,
            label=label,
        )

    @classmethod
    def binary_expansion_of(cls, value, label=''):
        """Monotone approximations floor(2^k v)/2^k of a known rational v."""
        value = Fraction(value)

        def h(k):
            return Fraction(math.floor(value * 2 ** k), 2 ** k)

        return cls.monotone(h, limit=value, label=label or f'{value}~')

    @property
    def is_exact(self):
        return self.value is not None

    def approximation(self, k):
        if self.kind is RealKind.EXACT:
            return self.value
        return Fraction(self.sequence(k))

    def exact_value(self):
        if self.value is None:
            raise NotClosedWorld(f'real {self.label} has no certified exact value')
        return self.value

    def floor(self):
        return math.floor(self.exact_value())

    def __str__(self):
        return self.label


def _as_fraction(x):
    if isinstance(x, RealSource):
        return x.exact_value()
    if isinstance(x, Dyadic):
        return x.to_fraction()
    return Fraction(x)


def real_prefix(x, n):
    """First n bits of frac(x), taking the expansion ending in zeros."""
    if n <= 0:
        return EMPTY
    value = _as_fraction(x)
    fractional = value - math.floor(value)
    scaled = math.floor(fractional * (1 << n))
    return format(scaled, f'0{n}b')
