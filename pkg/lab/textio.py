"""Plain-text formats: tables, registry manifests, snapshots, domain lists,
allocation logs and oracles.

Bitstrings are written as ASCII digits, the empty string as ``^``.
Lines starting with ``#`` and blank lines are ignored on read.
"""
import logging
from pathlib import Path

from .bits import canonical_sorted, decode_bits, encode_bits
from .computers import ComputerKind, ProgramComputer, Registry, TableComputer, numeral_table
from .constructions import HistoryComputer
from .enumerator import DomainSnapshot, Entry
from .reductions import HaltingList
from .vm import parse_program

logger = logging.getLogger(__name__)


def _lines(text):
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line and not line.startswith('#'):
            yield number, line


def read_table(path):
    table = {}
    for number, line in _lines(Path(path).read_text()):
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f'{path}:{number}: expected "<input> <output>"')
        key = decode_bits(fields[0])
        if key in table:
            raise ValueError(f'{path}:{number}: duplicate input {fields[0]}')
        table[key] = decode_bits(fields[1])
    return table


def table_text(table):
    return ''.join(f'{encode_bits(k)} {encode_bits(table[k])}\n' for k in canonical_sorted(table))


def read_manifest(path):
    """Manifest lines ``<index> <kind> <payload>`` with indices 1, 2, 3, ..."""
    entries = []
    for number, line in _lines(Path(path).read_text()):
        fields = line.split(None, 2)
        if len(fields) != 3:
            raise ValueError(f'{path}:{number}: expected "<index> <kind> <payload>"')
        index, kind, payload = int(fields[0]), fields[1], fields[2].strip()
        if index != len(entries) + 1:
            raise ValueError(f'{path}:{number}: index {index} out of sequence')
        entries.append((index, ComputerKind(kind), payload))
    return entries


def build_handle(kind, payload, base_dir, registry):
    if kind is ComputerKind.LPROGRAM:
        return ProgramComputer(parse_program(decode_bits(payload)))
    if kind is ComputerKind.TABLE:
        path = Path(payload)
        if not path.is_absolute():
            path = Path(base_dir) / path
        return TableComputer(read_table(path), name=path.stem)
    if kind is ComputerKind.NATIVE:
        return native_handle(payload, registry)
    raise ValueError(f'{kind.value} entries cannot be registered')


def native_handle(name, registry):
    """Natives a manifest can name: ``numerals:<width>`` and ``history:<index>``."""
    family, _, argument = name.partition(':')
    if family == 'numerals':
        return numeral_table(int(argument))
    if family == 'history':
        return HistoryComputer(registry[int(argument)])
    raise ValueError(f'unknown native computer {name!r}')


def load_registry(path):
    path = Path(path)
    registry = Registry()
    for _, kind, payload in read_manifest(path):
        registry.register(build_handle(kind, payload, path.parent, registry))
    return registry


def snapshot_text(snapshot):
    lines = [f'computer={snapshot.computer} budget={snapshot.budget} depth={snapshot.depth}']
    for entry in snapshot.entries:
        lines.append(f'{encode_bits(entry.input)} {encode_bits(entry.output)} {entry.steps}')
    return '\n'.join(lines) + '\n'


def parse_snapshot(text):
    lines = list(_lines(text))
    if not lines or not lines[0][1].startswith('computer='):
        raise ValueError('snapshot must start with "computer=<i> budget=<t> depth=<n>"')
    header = dict(field.split('=', 1) for field in lines[0][1].split())
    entries = []
    for number, line in lines[1:]:
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(f'line {number}: expected "<input> <output> <steps>"')
        entries.append(Entry(decode_bits(fields[0]), decode_bits(fields[1]), int(fields[2])))
    return DomainSnapshot(
        computer=header['computer'],
        budget=int(header['budget']),
        depth=int(header['depth']),
        entries=tuple(entries),
    )


def domain_text(strings):
    return ''.join(encode_bits(s) + '\n' for s in canonical_sorted(strings))


def parse_domain(text):
    """A domain list; an optional ``bound=<n>`` first line fixes its bound."""
    bound = None
    members = []
    for _, line in _lines(text):
        if line.startswith('bound='):
            bound = int(line.split('=', 1)[1])
        else:
            members.append(decode_bits(line))
    return members, bound


def read_oracle(path):
    """A HaltingList from a snapshot file or a domain list."""
    text = Path(path).read_text()
    if text.lstrip().startswith('computer='):
        return HaltingList.from_snapshot(parse_snapshot(text))
    members, bound = parse_domain(text)
    if bound is None:
        bound = max((len(m) for m in members), default=0)
        logger.warning('%s has no bound= line; it only certifies inputs up to its longest member (%d)', path, bound)
    return HaltingList(frozenset(members), bound)


def oracle_text(oracle):
    return f'bound={oracle.bound}\n' + domain_text(oracle.members)


def allocation_text(issued):
    return ''.join(f'{n} {len(codeword)} {encode_bits(codeword)}\n' for n, codeword in issued)


def write_artifact(directory, name, text):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / name
    path.write_text(text)
    return path
