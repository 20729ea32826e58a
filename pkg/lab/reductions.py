"""Oracle reductions between halting lists, Omega prefixes and real prefixes.

Every oracle here is a finite object: a halting list Dom U'|n or an Omega
prefix. In a closed world both are exactly computable, so each procedure can
be checked end to end against ground truth.
"""
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple

from .bits import (
    ZERO,
    Dyadic,
    canonical_key,
    canonical_sorted,
    check_bits,
    encode_bits,
    first_prefix_pair,
    nat_to_string,
    real_prefix,
    restrict,
    string_to_nat,
)
from .computers import run_to_halt
from .conf import clamp_budget, lab_setting
from .constructions import (
    EnumerationIndexComputer,
    HistoryComputer,
    ShortProgramThresholdComputer,
    ThresholdComputer,
)
from .enumerator import DomainEnumeration, dovetail, explore
from .exceptions import (
    BudgetExhaustedError,
    InconsistentOracle,
    InvalidPrefix,
    NotClosedWorld,
    OracleBoundTooSmall,
    PrefixViolation,
)
from .kraft import allocate_for, choose_shift
from .measures import complexity
from .vm import Outcome

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HaltingList:
    """The oracle Dom V|bound, as a finite prefix-free set."""

    members: FrozenSet[str]
    bound: int

    def __post_init__(self):
        members = frozenset(check_bits(m) for m in self.members)
        object.__setattr__(self, 'members', members)
        clash = first_prefix_pair(members)
        if clash is not None:
            raise PrefixViolation(*clash)
        too_long = [m for m in members if len(m) > self.bound]
        if too_long:
            raise ValueError(f'{min(too_long, key=canonical_key)} is longer than the bound {self.bound}')

    @classmethod
    def from_snapshot(cls, snapshot, bound=None):
        bound = snapshot.depth if bound is None else bound
        if not snapshot.complete_to(bound):
            raise NotClosedWorld(f'snapshot of {snapshot.computer} does not settle every input of length <= {bound}')
        return cls(snapshot.restrict(bound), bound)

    def restrict(self, bound):
        if bound > self.bound:
            raise OracleBoundTooSmall(self.bound, bound)
        return HaltingList(restrict(self.members, bound), bound)

    def __contains__(self, p):
        return p in self.members

    def __iter__(self):
        return iter(canonical_sorted(self.members))

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class OmegaPrefix:
    bits: str

    @property
    def length(self):
        return len(self.bits)

    @property
    def value(self):
        return Dyadic.from_bits(self.bits)


def omega_prefix(value, n):
    """Omega|n; Omega = 1 has no expansion below 1, so its prefixes are all ones."""
    if value == 1:
        return '1' * max(n, 0)
    return real_prefix(value, n)


@dataclass(frozen=True)
class ReductionConstants:
    d: int
    d0: int = 0
    c: int = 0
    d_star: str = ''
    h_d: int = 0
    d1: int = 0
    d2: int = 0


class Transcript:
    """Ordered log of oracle consultations, one "<kind> <payload> <answer>" line each."""

    def __init__(self):
        self.lines = []

    def record(self, kind, payload, answer):
        if isinstance(payload, str) and set(payload) <= {'0', '1'}:
            payload = encode_bits(payload)
        if isinstance(answer, bool):
            answer = 'yes' if answer else 'no'
        self.lines.append(f'{kind} {payload} {answer}')

    def text(self):
        return ''.join(line + '\n' for line in self.lines)

    def __len__(self):
        return len(self.lines)


def _record(transcript, kind, payload, answer):
    if transcript is not None:
        transcript.record(kind, payload, answer)


class OracleView:
    """U'-outputs of the oracle members, computed once and grouped by length."""

    def __init__(self, registry, oracle):
        self.registry = registry
        self.oracle = oracle
        self._outputs = None
        self._by_bound = {}

    @property
    def outputs(self):
        if self._outputs is None:
            universe = self.registry.universal
            outputs = {}
            for q in self.oracle:
                outcome = run_to_halt(universe, q)
                if outcome.kind is not Outcome.HALTED:
                    raise InconsistentOracle(f'{encode_bits(q)} is in the oracle but U\' {outcome.kind.value} on it')
                outputs[q] = outcome.output
            self._outputs = outputs
        return self._outputs

    def outputs_up_to(self, m):
        if m not in self._by_bound:
            self._by_bound[m] = frozenset(out for q, out in self.outputs.items() if len(q) <= m)
        return self._by_bound[m]


def _contradicts(lower, ceiling):
    # Omega = 1 is written as all ones, so only a ceiling of 1 may be reached
    return lower > ceiling or lower == ceiling < 1


def _view(registry, oracle, view):
    if view is not None and view.oracle is oracle and view.registry is registry:
        return view
    return OracleView(registry, oracle)


# Halting lists from Omega prefixes


def fact1_halting_from_omega(computer, prefix, budget, depth=None, transcript=None):
    """Dom V|n from Omega_V|n by dovetailing until the lower bound passes 0.prefix."""
    prefix = check_bits(prefix)
    n = len(prefix)
    threshold = Dyadic.from_bits(prefix)
    ceiling = threshold + Dyadic.unit(n)
    depth = max(lab_setting('DEFAULT_DEPTH'), 2 * n + 2) if depth is None else depth
    for snapshot in dovetail(computer, clamp_budget(budget), depth):
        lower = snapshot.lower
        if _contradicts(lower, ceiling):
            raise InvalidPrefix(f'Omega of {snapshot.computer} is at least {lower}, not below 0.{prefix} + 2^-{n}')
        if lower > threshold or (snapshot.closed and lower >= threshold):
            _record(transcript, 'omega-threshold', prefix, str(lower))
            logger.info('threshold 0.%s crossed with %d entries', prefix, len(snapshot.entries))
            return snapshot.restrict(n)
        if snapshot.closed:
            raise InvalidPrefix(f'Omega of {snapshot.computer} is {lower}, below 0.{prefix}')
    raise BudgetExhaustedError(f'lower bound never passed 0.{encode_bits(prefix)} within budget {budget}')


@dataclass
class AppendixCSetup:
    """U' with the enumeration-index computer of C registered in it."""

    registry: object
    target: object
    enumeration: DomainEnumeration
    registration: object

    @property
    def constant(self):
        return self.registration.constant


def prepare_appendix_c(registry, computer, budget=None, depth=None):
    enumeration = DomainEnumeration(computer, budget, depth)
    registration = registry.register(EnumerationIndexComputer(computer, enumeration))
    return AppendixCSetup(registry, computer, enumeration, registration)


def appendixC_halting_from_omega(setup, n, prefix, budget, depth=None, transcript=None):
    """Dom C|n from Omega_V|(n+d), reading output probabilities of V = U'.

    Finds k_e with P_V(0) + ... + P_V(k_e) > 0.prefix; every p_i with i > k_e
    then has |p_i| > n.
    """
    prefix = check_bits(prefix)
    required = n + setup.constant
    if len(prefix) < required:
        raise OracleBoundTooSmall(len(prefix), required)
    if n < 0:
        return frozenset()
    prefix = prefix[:required]
    threshold = Dyadic.from_bits(prefix)
    ceiling = threshold + Dyadic.unit(required)
    depth = max(lab_setting('DEFAULT_DEPTH'), 2 * required + 2) if depth is None else depth
    universe = setup.registry.universal
    for snapshot in dovetail(universe, clamp_budget(budget), depth):
        lower = snapshot.lower
        if _contradicts(lower, ceiling):
            raise InvalidPrefix(f'Omega of U\' is at least {lower}, not below 0.{prefix} + 2^-{required}')
        probabilities = {}
        for entry in snapshot.entries:
            i = string_to_nat(entry.output)
            probabilities[i] = probabilities.get(i, ZERO) + Dyadic.unit(len(entry.input))
        running = ZERO
        for i in range(max(probabilities, default=-1) + 1):
            running += probabilities.get(i, ZERO)
            if running > threshold:
                _record(transcript, 'k_e', prefix, i)
                return restrict(_first_members(setup.enumeration, i + 1), n)
        if snapshot.closed:
            if lower < threshold:
                raise InvalidPrefix(f'Omega of U\' is {lower}, below 0.{prefix}')
            _record(transcript, 'k_e', prefix, 'closed')
            return restrict(setup.enumeration.run_until_finished(), n)
    raise BudgetExhaustedError(f'output probabilities never passed 0.{encode_bits(prefix)} within budget {budget}')


def _first_members(enumeration, count):
    # other registered computers may output small numerals too, so a closed
    # enumeration can be shorter than count
    members = []
    for k in range(count):
        try:
            members.append(enumeration[k])
        except IndexError:
            if not enumeration.closed:
                raise BudgetExhaustedError(
                    f'{enumeration.label} gave {k} of {count} members within budget {enumeration.budget}'
                )
            break
    return members


def main3_domain_from_omega(setup, n, prefix, f, d1=None, budget=None, depth=None, transcript=None, bound_offset=0):
    """Dom W|(m + f(m) - c) from Omega_V|m for a bounded f, with c = d1 + d2.

    m is n + bound_offset. With bound_offset = c - f(n) and a constant f this
    reads Dom W|n off Omega_V|(n - f(n) + c).
    """
    if d1 is None:
        d1 = f.upper_bound()
        if d1 is None:
            raise ValueError(f'{f} has no known finite bound; pass d1 explicitly')
    n += bound_offset
    if n >= 1 and f(n) > d1:
        raise ValueError(f'f({n}) = {f(n)} exceeds d1 = {d1}')
    d2 = setup.constant
    c = d1 + d2
    if n <= d2:
        return frozenset()
    if len(prefix) < n:
        raise OracleBoundTooSmall(len(prefix), n)
    domain = appendixC_halting_from_omega(
        setup, n - d2, prefix[:n], budget or lab_setting('DEFAULT_BUDGET'), depth, transcript,
    )
    return restrict(domain, n + f(n) - c)


# Membership and domains from the halting list of U'


@dataclass
class HistorySetup:
    """C together with its history computer D registered in U'."""

    registry: object
    target: object
    registration: object

    @property
    def constant(self):
        return self.registration.constant


def prepare_weaksim(registry, computer):
    registration = registry.register(HistoryComputer(computer))
    return HistorySetup(registry, computer, registration)


def weaksim_decide(setup, p, oracle, transcript=None, view=None):
    """Is p in Dom C, given Dom U'|(|p| + d_j)?

    S_p collects every U'-output on the oracle; C's history on p is computed
    for at most as many steps as the longest history in S_p.
    """
    p = check_bits(p)
    required = len(p) + setup.constant
    if oracle.bound < required:
        raise OracleBoundTooSmall(oracle.bound, required)
    view = _view(setup.registry, oracle, view)
    candidates = view.outputs_up_to(required)
    steps = [setup.target.history_steps(s) for s in candidates]
    bound = max((s for s in steps if s is not None), default=0)
    answer = False
    if bound > 0:
        record = setup.target.history(p, bound)
        answer = record is not None and record in candidates
    _record(transcript, 'weaksim', p, answer)
    return answer


def occ_domain_from_domain(setup, n, oracle, transcript=None, under='', budget=None):
    """Dom C|n from Dom U'|(n + d_j), walking C's demand tree with weaksim.

    ``under`` limits the walk to inputs comparable with that prefix.
    """
    required = n + setup.constant
    if oracle.bound < required:
        raise OracleBoundTooSmall(oracle.bound, required)
    if n < 0:
        return frozenset()
    view = _view(setup.registry, oracle, None)
    budget = budget or lab_setting('DEFAULT_BUDGET')
    found = set()
    stack = ['']
    while stack:
        x = stack.pop()
        if weaksim_decide(setup, x, oracle, transcript, view):
            found.add(x)
            continue
        if len(x) >= n:
            continue
        outcome = setup.target.run(x, budget)
        if outcome.kind not in (Outcome.NEEDS_INPUT, Outcome.BUDGET_EXHAUSTED):
            continue
        for child in (x + '1', x + '0'):
            if child.startswith(under) or under.startswith(child):
                stack.append(child)
    return frozenset(found)


def threshold_bit_extract(member, m, strategy='linear', transcript=None):
    """The m-bit x with member(s) iff s <= x."""
    if m < 0:
        raise ValueError(f'width must be natural, got {m}')
    if m == 0:
        return ''

    def ask(value):
        s = format(value, f'0{m}b')
        answer = bool(member(s))
        _record(transcript, 'member', s, answer)
        return answer

    if strategy == 'binary':
        if not ask(0):
            raise InconsistentOracle(f'{"0" * m} is not accepted')
        low, high = 0, 2 ** m - 1
        while low < high:
            middle = (low + high + 1) // 2
            if ask(middle):
                low = middle
            else:
                high = middle - 1
        return format(low, f'0{m}b')
    if strategy != 'linear':
        raise ValueError(f'unknown strategy {strategy!r}')
    largest = None
    rejected = False
    for value in range(2 ** m):
        if ask(value):
            if rejected:
                raise InconsistentOracle(f'{format(value, f"0{m}b")} accepted after a smaller string was rejected')
            largest = value
        else:
            rejected = True
    if largest is None:
        raise InconsistentOracle(f'no {m}-bit string accepted')
    return format(largest, f'0{m}b')


# Bits of a real from the halting list of U'


@dataclass
class ThresholdSetup:
    registry: object
    computer: object
    history: HistorySetup
    alpha: object
    f: object
    constants: ReductionConstants
    codewords: Tuple[str, ...] = ()
    horizon: Optional[int] = None
    budget: int = field(default=0)


def shortest_program(universe, s, budget=None, max_depth=None):
    """(s*, H(s)) on U', deepening the exploration until the answer is certified."""
    max_depth = lab_setting('DEFAULT_DEPTH') if max_depth is None else max_depth
    for depth in range(max_depth + 1):
        found = complexity(s, universe, budget, depth)
        if found.witness is not None and found.exact:
            return found.witness, found.value
    raise NotClosedWorld(f'no certified shortest program for {encode_bits(s)} up to depth {max_depth}')


def _comparison_constants(registry, history, budget, d0=0):
    d = history.constant
    d_star, h_d = shortest_program(registry.universal, nat_to_string(d), budget)
    return ReductionConstants(d=d, d0=d0, c=d0 + d + h_d, d_star=d_star, h_d=h_d)


def prepare_ire(registry, alpha, f, horizon, budget=None):
    """Register the comparison computer's history and fix d, d*, H(d), d0 and c."""
    shift = choose_shift(f, horizon)
    codewords = allocate_for(f, shift, horizon)
    computer = ThresholdComputer(registry.universal, codewords, alpha)
    history = prepare_weaksim(registry, computer)
    constants = _comparison_constants(registry, history, budget, shift)
    logger.info('threshold constants for %s: d=%d d0=%d H(d)=%d c=%d', alpha, constants.d, shift, constants.h_d, constants.c)
    return ThresholdSetup(
        registry, computer, history, alpha, f, constants,
        codewords=tuple(codewords), horizon=horizon, budget=budget or lab_setting('DEFAULT_BUDGET'),
    )


def prepare_iire(registry, alpha, f, budget=None):
    computer = ShortProgramThresholdComputer(registry.universal, alpha)
    history = prepare_weaksim(registry, computer)
    constants = _comparison_constants(registry, history, budget)
    return ThresholdSetup(
        registry, computer, history, alpha, f, constants, budget=budget or lab_setting('DEFAULT_BUDGET'),
    )


def _extract(setup, n, head, oracle, transcript, strategy):
    constants = setup.constants
    width = n - len(head) - constants.d - constants.h_d
    prefix = head + constants.d_star
    domain = occ_domain_from_domain(setup.history, n - constants.d, oracle, transcript, under=prefix)
    return threshold_bit_extract(lambda s: prefix + s in domain, width, strategy, transcript)


def ire_extract_bits(setup, n, oracle, transcript=None, strategy='linear', bound_offset=0):
    """alpha|(m - f(m) - c) from Dom U'|m, where m = n + bound_offset.

    With bound_offset = f(n) + c and a constant f the answer is alpha|n read
    off Dom U'|(n + f(n) + c).
    """
    n += bound_offset
    if n < 1:
        raise ValueError(f'n must be positive, got {n}')
    if oracle.bound < n:
        raise OracleBoundTooSmall(oracle.bound, n)
    if n > setup.horizon:
        raise NotClosedWorld(f'codewords are allocated up to {setup.horizon}, asked for {n}')
    constants = setup.constants
    codeword = setup.codewords[n - 1]
    if n - len(codeword) - constants.d - constants.h_d <= 0:
        _record(transcript, 'lambda-branch', n, 'yes')
        return ''
    return _extract(setup, n, codeword, oracle, transcript, strategy)


def iire_extract_bits(setup, n, oracle, budget=None, transcript=None, strategy='linear', bound_offset=0):
    """alpha|(m - f(m) - d - H(d)) from Dom U'|m, or None when m has no short program.

    m is n + bound_offset, as for ``ire_extract_bits``.
    """
    n += bound_offset
    if n < 1:
        raise ValueError(f'n must be positive, got {n}')
    if oracle.bound < n:
        raise OracleBoundTooSmall(oracle.bound, n)
    constants = setup.constants
    target = nat_to_string(n)
    limit = setup.f(n)
    view = OracleView(setup.registry, oracle)
    candidates = {q for q, out in view.outputs.items() if out == target and len(q) <= limit}
    if limit > oracle.bound:
        # programs longer than the oracle bound are only found by search
        snapshot = explore(setup.registry.universal, budget or setup.budget, limit)
        candidates.update(e.input for e in snapshot.entries if e.output == target)
    viable = [q for q in candidates if n - len(q) - constants.d - constants.h_d >= 1]
    if not viable:
        _record(transcript, 'short-program', n, 'none')
        return None
    program = min(viable, key=canonical_key)
    _record(transcript, 'short-program', n, encode_bits(program))
    bits = _extract(setup, n, program, oracle, transcript, strategy)
    return bits[:max(n - limit - constants.d - constants.h_d, 0)]
