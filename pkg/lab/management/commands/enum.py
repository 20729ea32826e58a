from lab.enumerator import explore, max_running_time, omega_approx
from lab.measures import omega_exact
from lab.exceptions import NotClosedWorld
from lab.textio import snapshot_text

from ._base import CommandResult, LabCommand


class Command(LabCommand):
    help = 'Explore domains, approximate Omega and measure running times'

    actions = ('explore', 'omega', 'time')

    def _entry_argument(self, parser):
        parser.add_argument('--entry', type=int, default=None, help="Registry index (default: U')")

    def add_explore_arguments(self, parser):
        self._entry_argument(parser)

    def add_omega_arguments(self, parser):
        self._entry_argument(parser)

    def add_time_arguments(self, parser):
        self._entry_argument(parser)
        parser.add_argument('--n', type=int, required=True, help='Input length bound')

    def handle_explore(self, options):
        """Write the snapshot of a demand-tree exploration"""
        registry = self.registry(options)
        computer = self.computer(registry, options)
        label = 'U' if options['entry'] is None else str(options['entry'])
        snapshot = explore(computer, self.budget(options), self.depth(options), label)
        report = self.report(options)
        report.add('entries', len(snapshot.entries), snapshot.closed)
        report.add('exhausted', len(snapshot.exhausted))
        report.add('pruned', len(snapshot.pruned))
        report.add('omega_lower', snapshot.lower, snapshot.closed)
        return CommandResult('snapshot.txt', snapshot_text(snapshot), report)

    def handle_omega(self, options):
        """Print Omega exactly when the domain closes, else a lower bound"""
        registry = self.registry(options)
        computer = self.computer(registry, options)
        budget, depth = self.budget(options), self.depth(options)
        try:
            value, exact = omega_exact(computer, budget, depth)
        except NotClosedWorld:
            approximation = omega_approx(computer, budget, depth)
            value, exact = approximation.lower, False
        report = self.report(options)
        report.add('omega', value, exact)
        flag = 'exact' if exact else 'lower-bound'
        return CommandResult('omega.txt', f'{value} {flag}\n', report)

    def handle_time(self, options):
        """Print T_n, the longest halting run on inputs of length <= n"""
        registry = self.registry(options)
        computer = self.computer(registry, options)
        running = max_running_time(computer, options['n'], self.budget(options))
        report = self.report(options)
        report.add('T', running.steps, running.exact)
        flag = 'exact' if running.exact else 'lower-bound'
        return CommandResult('time.txt', f'{running.steps} {flag}\n', report)
