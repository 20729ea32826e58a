from lab.bits import check_bits, decode_bits, encode_bits
from lab.kraft import LengthFunction
from lab.measures import omega_exact
from lab.reductions import (
    Transcript,
    appendixC_halting_from_omega,
    fact1_halting_from_omega,
    iire_extract_bits,
    ire_extract_bits,
    main3_domain_from_omega,
    occ_domain_from_domain,
    omega_prefix,
    prepare_appendix_c,
    prepare_iire,
    prepare_ire,
    prepare_weaksim,
    weaksim_decide,
)
from lab.textio import domain_text, write_artifact

from ._base import CommandResult, LabCommand


class Command(LabCommand):
    help = 'Run the oracle reductions on a registry'

    actions = ('fact1', 'appxc', 'weaksim', 'occ', 'ire', 'iire', 'main3')

    def _n(self, parser):
        parser.add_argument('--n', type=int, required=True, help='Length bound n')

    def _prefix(self, parser):
        parser.add_argument('--prefix', type=str, default=None, help='Omega prefix (default: computed exactly)')

    def _entry(self, parser, required=True):
        parser.add_argument('--entry', type=int, required=required, default=None, help='Registry index')

    def _oracle(self, parser):
        parser.add_argument('--oracle', type=str, default=None, help="Halting list of U' (default: computed exactly)")

    def _bound_offset(self, parser):
        parser.add_argument('--bound-offset', type=int, default=0, help='Shift of the oracle bound from n (default: 0)')

    def _alpha(self, parser):
        parser.add_argument('--alpha', type=str, required=True, help='omega:<i> or a rational such as 1/3')
        parser.add_argument('--f', type=str, required=True, help='Length function')

    def add_fact1_arguments(self, parser):
        self._entry(parser, required=False)
        self._n(parser)
        self._prefix(parser)

    def add_appxc_arguments(self, parser):
        self._entry(parser)
        self._n(parser)
        self._prefix(parser)

    def add_weaksim_arguments(self, parser):
        self._entry(parser)
        parser.add_argument('--input', type=str, required=True, help='Input bits')
        self._oracle(parser)

    def add_occ_arguments(self, parser):
        self._entry(parser)
        self._n(parser)
        self._oracle(parser)

    def add_ire_arguments(self, parser):
        self._alpha(parser)
        self._n(parser)
        self._bound_offset(parser)
        parser.add_argument('--horizon', type=int, default=None, help='Codewords allocated for 1..horizon (default: n)')
        self._oracle(parser)

    def add_iire_arguments(self, parser):
        self._alpha(parser)
        self._n(parser)
        self._bound_offset(parser)
        self._oracle(parser)

    def add_main3_arguments(self, parser):
        self._entry(parser)
        self._n(parser)
        self._prefix(parser)
        parser.add_argument('--f', type=str, required=True, help='Bounded length function')
        parser.add_argument('--d1', type=int, default=None, help='Bound on f (default: sup f)')
        self._bound_offset(parser)

    def _omega_prefix(self, computer, length, options):
        if options['prefix'] is not None:
            return check_bits(options['prefix'])
        value = omega_exact(computer, self.budget(options), self.depth(options)).value
        return omega_prefix(value, length)

    def _finish(self, name, text, report, transcript, options):
        report.add('transcript_lines', len(transcript))
        if options['out']:
            write_artifact(options['out'], 'transcript.txt', transcript.text())
        return CommandResult(name, text, report)

    def handle_fact1(self, options):
        """Dom V|n from the first n bits of Omega_V"""
        registry = self.registry(options)
        computer = self.computer(registry, options)
        prefix = self._omega_prefix(computer, options['n'], options)
        transcript = Transcript()
        domain = fact1_halting_from_omega(computer, prefix, self.budget(options), options['depth'], transcript)
        report = self.report(options)
        report.add('prefix', encode_bits(prefix))
        report.add('domain_size', len(domain))
        return self._finish('domain.txt', domain_text(domain), report, transcript, options)

    def handle_appxc(self, options):
        """Dom C|n from Omega_U'|(n+d), through output probabilities"""
        registry = self.registry(options)
        setup = prepare_appendix_c(registry, registry[options['entry']], self.budget(options))
        n = options['n']
        prefix = self._omega_prefix(registry.universal, n + setup.constant, options)
        transcript = Transcript()
        domain = appendixC_halting_from_omega(setup, n, prefix, self.budget(options), options['depth'], transcript)
        report = self.report(options)
        report.add('d', setup.constant)
        report.add('domain_size', len(domain))
        return self._finish('domain.txt', domain_text(domain), report, transcript, options)

    def handle_weaksim(self, options):
        """Decide p in Dom C from the halting list of U'"""
        registry = self.registry(options)
        setup = prepare_weaksim(registry, registry[options['entry']])
        p = decode_bits(options['input'])
        oracle = self.oracle(registry, len(p) + setup.constant, options)
        transcript = Transcript()
        answer = weaksim_decide(setup, p, oracle, transcript)
        report = self.report(options, options['oracle'])
        report.add('d', setup.constant)
        report.add('member', answer)
        return self._finish('weaksim.txt', ('yes' if answer else 'no') + '\n', report, transcript, options)

    def handle_occ(self, options):
        """Dom C|n from the halting list of U'"""
        registry = self.registry(options)
        setup = prepare_weaksim(registry, registry[options['entry']])
        oracle = self.oracle(registry, options['n'] + setup.constant, options)
        transcript = Transcript()
        domain = occ_domain_from_domain(setup, options['n'], oracle, transcript, budget=options['budget'])
        report = self.report(options, options['oracle'])
        report.add('d', setup.constant)
        report.add('domain_size', len(domain))
        return self._finish('domain.txt', domain_text(domain), report, transcript, options)

    def handle_ire(self, options):
        """Bits of alpha from the halting list of U', with Kraft-Chaitin codewords"""
        registry = self.registry(options)
        alpha = self.alpha(options['alpha'], registry, options)
        f = LengthFunction.parse(options['f'])
        n, offset = options['n'], options['bound_offset']
        setup = prepare_ire(registry, alpha, f, options['horizon'] or n + offset, self.budget(options))
        oracle = self.oracle(registry, n + offset, options)
        transcript = Transcript()
        bits = ire_extract_bits(setup, n, oracle, transcript, bound_offset=offset)
        report = self.report(options, options['oracle'])
        self._constants(report, setup.constants)
        report.add('bits', encode_bits(bits))
        return self._finish('bits.txt', encode_bits(bits) + '\n', report, transcript, options)

    def handle_iire(self, options):
        """Bits of alpha from the halting list of U', when n has a short program"""
        registry = self.registry(options)
        alpha = self.alpha(options['alpha'], registry, options)
        f = LengthFunction.parse(options['f'])
        n, offset = options['n'], options['bound_offset']
        setup = prepare_iire(registry, alpha, f, self.budget(options))
        oracle = self.oracle(registry, n + offset, options)
        transcript = Transcript()
        bits = iire_extract_bits(setup, n, oracle, self.budget(options), transcript, bound_offset=offset)
        report = self.report(options, options['oracle'])
        self._constants(report, setup.constants)
        text = 'not-this-n' if bits is None else encode_bits(bits)
        report.add('bits', text)
        return self._finish('bits.txt', text + '\n', report, transcript, options)

    def handle_main3(self, options):
        """Dom W|(n+f(n)-c) from Omega_U'|n for a bounded f"""
        registry = self.registry(options)
        setup = prepare_appendix_c(registry, registry[options['entry']], self.budget(options))
        n = options['n']
        f = LengthFunction.parse(options['f'])
        offset = options['bound_offset']
        prefix = self._omega_prefix(registry.universal, n + offset, options)
        transcript = Transcript()
        domain = main3_domain_from_omega(
            setup, n, prefix, f, options['d1'], self.budget(options), options['depth'], transcript,
            bound_offset=offset,
        )
        report = self.report(options)
        report.add('d2', setup.constant)
        report.add('domain_size', len(domain))
        return self._finish('domain.txt', domain_text(domain), report, transcript, options)

    def _constants(self, report, constants):
        report.add('d', constants.d)
        report.add('d0', constants.d0)
        report.add('H(d)', constants.h_d)
        report.add('c', constants.c)
