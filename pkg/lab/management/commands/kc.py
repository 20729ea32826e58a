from lab.kraft import Allocator, LengthFunction, choose_shift, kraft_partial_sum
from lab.textio import allocation_text

from ._base import CommandResult, LabCommand


class Command(LabCommand):
    help = 'Allocate Kraft-Chaitin codewords and sum Kraft series exactly'

    actions = ('alloc', 'sum')

    def add_alloc_arguments(self, parser):
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument('--f', type=str, help='Length function: const:k, floorlog:a or table:<path>')
        group.add_argument('--lengths', type=str, help='Comma-separated request lengths')
        parser.add_argument('--N', type=int, default=None, help='Number of requests when --f is given')
        parser.add_argument('--shift', type=int, default=None, help='Added to every length (default: smallest safe shift)')

    def add_sum_arguments(self, parser):
        parser.add_argument('--f', type=str, required=True, help='Length function')
        parser.add_argument('--N', type=int, required=True, help='Number of terms')

    def handle_alloc(self, options):
        """Issue codewords one request at a time and write the allocation log"""
        if options['lengths'] is not None:
            lengths = [int(v) for v in options['lengths'].split(',') if v.strip()]
            shift = options['shift'] or 0
        else:
            if options['N'] is None:
                raise ValueError('--N is required with --f')
            f = LengthFunction.parse(options['f'])
            lengths = [f(n) for n in range(1, options['N'] + 1)]
            shift = choose_shift(f, options['N']) if options['shift'] is None else options['shift']
        allocator = Allocator()
        for n, length in enumerate(lengths, start=1):
            allocator.allocate(length + shift, n)
        report = self.report(options)
        report.add('shift', shift)
        report.add('codewords', len(allocator.issued))
        report.add('kraft_spent', allocator.kraft_spent)
        return CommandResult('allocation.txt', allocation_text(allocator.issued), report)

    def handle_sum(self, options):
        """Print the exact partial sum of 2^-f(n) for n = 1..N"""
        f = LengthFunction.parse(options['f'])
        total = kraft_partial_sum(f, options['N'])
        report = self.report(options)
        report.add('sum', total)
        report.add('shift', choose_shift(f, options['N']))
        return CommandResult('sum.txt', f'{total}\n', report)
