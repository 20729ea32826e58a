import logging
import shlex
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from django.core.management.base import BaseCommand, CommandError

from lab.bits import RealSource
from lab.conf import lab_setting
from lab.enumerator import explore
from lab.exceptions import EXIT_USAGE, LabError
from lab.measures import omega_exact
from lab.models import stored_registry
from lab.reductions import HaltingList
from lab.reports import RunReport, inputs_digest
from lab.textio import load_registry, read_oracle, write_artifact

logger = logging.getLogger('lab.commands')


@dataclass
class CommandResult:
    name: str
    text: str
    report: RunReport


class LabCommand(BaseCommand):
    """Base for the lab commands: one subparser per action, shared flags,
    artifacts on stdout or in --out, LabError mapped to its exit code."""

    requires_system_checks = []
    actions = ()
    _executing = False

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='action', required=True)
        for action in self.actions:
            subparser = subparsers.add_parser(action, help=getattr(self, f'handle_{action}').__doc__)
            self.add_common_arguments(subparser)
            getattr(self, f'add_{action}_arguments')(subparser)

    def add_common_arguments(self, parser):
        parser.add_argument('--budget', type=int, default=None, help='Per-node step budget')
        parser.add_argument('--depth', type=int, default=None, help='Demand-tree depth')
        parser.add_argument('--registry', type=str, default=None, help='Registry manifest (default: stored registry)')
        parser.add_argument('--out', type=str, default=None, help='Directory for artifacts and the report')
        parser.add_argument('--format', choices=['text', 'json'], default='text', help='Output format')

    def run_from_argv(self, argv):
        try:
            super().run_from_argv(argv)
        except SystemExit as exc:
            # argparse exits with 2 before the command ever runs
            if not self._executing and exc.code == 2:
                sys.exit(EXIT_USAGE)
            raise

    def execute(self, *args, **options):
        self._executing = True
        return super().execute(*args, **options)

    def handle(self, *args, **options):
        action = options['action']
        started = time.perf_counter()
        try:
            result = getattr(self, f'handle_{action}')(options)
        except LabError as exc:
            raise CommandError(str(exc), returncode=exc.exit_code) from exc
        except (ValueError, KeyError, FileNotFoundError) as exc:
            raise CommandError(f'{exc}', returncode=EXIT_USAGE) from exc
        logger.info('%s %s finished in %.3fs', self.command_name, action, time.perf_counter() - started)
        self.emit(result, options)

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def emit(self, result, options):
        fmt = options['format']
        shown = result.report.as_json() if fmt == 'json' else result.text
        if shown:
            self.stdout.write(shown, ending='')
        if options['out']:
            write_artifact(options['out'], result.name, result.text)
            write_artifact(options['out'], 'report.json' if fmt == 'json' else 'report.txt', result.report.render(fmt))

    def report(self, options, *paths):
        arguments = ' '.join(
            f'{key}={options[key]}' for key in sorted(options)
            if key not in ('out', 'format', 'verbosity', 'settings', 'pythonpath', 'traceback',
                           'no_color', 'force_color', 'skip_checks')
        )
        command = f'{self.command_name} {shlex.quote(options["action"])}'
        return RunReport(command, inputs_digest(arguments, (options.get('registry'),) + paths))

    # Shared option helpers

    def budget(self, options):
        return options['budget'] or lab_setting('DEFAULT_BUDGET')

    def depth(self, options):
        return lab_setting('DEFAULT_DEPTH') if options['depth'] is None else options['depth']

    def registry(self, options):
        if options['registry']:
            return load_registry(options['registry'])
        return stored_registry()

    def computer(self, registry, options):
        entry = options.get('entry')
        return registry.universal if entry is None else registry[entry]

    def oracle(self, registry, bound, options):
        """Dom U'|bound from --oracle, or computed when U' is closed enough."""
        if options.get('oracle'):
            return read_oracle(options['oracle']).restrict(bound)
        snapshot = explore(registry.universal, self.budget(options), bound)
        return HaltingList.from_snapshot(snapshot, bound)

    def alpha(self, text, registry, options):
        """``omega:<i>`` for the exact Omega of entry i, else a rational like 1/3."""
        if text.startswith('omega:'):
            value = omega_exact(registry[int(text.split(':', 1)[1])], self.budget(options), self.depth(options))
            return RealSource.exact(value.value, label=text)
        return RealSource.exact(Fraction(text), label=text)
