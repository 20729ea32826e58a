from lab.bits import decode_bits, encode_bits
from lab.exceptions import BudgetExhaustedError
from lab.vm import Outcome, assemble, disassemble, parse_program, run

from ._base import CommandResult, LabCommand


class Command(LabCommand):
    help = 'Run or parse programs of the base language L'

    actions = ('run', 'parse')

    def _program_arguments(self, parser):
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument('--program', type=str, help='Serialized program bits')
        group.add_argument('--asm', type=str, help='Assembly text, e.g. "READ; OUTR; HALT"')

    def _program(self, options):
        if options['program'] is not None:
            return parse_program(decode_bits(options['program']))
        return assemble(options['asm'])

    def add_run_arguments(self, parser):
        self._program_arguments(parser)
        parser.add_argument('--input', type=str, default='^', help='Input bits (^ for the empty string)')

    def add_parse_arguments(self, parser):
        self._program_arguments(parser)

    def handle_run(self, options):
        """Run a program on one input and print its output"""
        program = self._program(options)
        outcome = run(program, decode_bits(options['input']), self.budget(options))
        if outcome.kind is Outcome.BUDGET_EXHAUSTED:
            raise BudgetExhaustedError(f'no verdict within {outcome.steps} steps')
        report = self.report(options)
        report.add('outcome', outcome.kind.value)
        report.add('consumed', outcome.consumed)
        report.add('steps', outcome.steps)
        if outcome.halted:
            report.add('output', encode_bits(outcome.output))
            return CommandResult('run.txt', encode_bits(outcome.output) + '\n', report)
        return CommandResult('run.txt', f'{outcome.kind.value} consumed={outcome.consumed}\n', report)

    def handle_parse(self, options):
        """Print a program's assembly, or the bits of assembly text"""
        program = self._program(options)
        report = self.report(options)
        report.add('instructions', len(program))
        report.add('diverge_marker', program.diverge_marker)
        if options['program'] is not None:
            text = disassemble(program)
        else:
            text = encode_bits(program.source_bits)
        report.add('program', text)
        return CommandResult('program.txt', text + '\n', report)
