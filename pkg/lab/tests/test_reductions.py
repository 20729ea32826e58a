from fractions import Fraction

from django.test import SimpleTestCase

from lab import closed_world
from lab.bits import Dyadic, RealSource, nat_to_string, real_prefix, restrict, strings_up_to
from lab.computers import ProgramComputer, Registry, TableComputer
from lab.enumerator import explore
from lab.exceptions import (
    BudgetExhaustedError,
    InconsistentOracle,
    InvalidPrefix,
    NotClosedWorld,
    OracleBoundTooSmall,
    PrefixViolation,
)
from lab.kraft import LengthFunction
from lab.measures import omega_exact
from lab.reductions import (
    HaltingList,
    OracleView,
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
    threshold_bit_extract,
    weaksim_decide,
)
from lab.vm import assemble


def table_domain(name, n):
    return restrict(closed_world.TABLES[name], n)


def universal_oracle(registry, bound, budget=256):
    return HaltingList.from_snapshot(explore(registry.universal, budget, bound), bound)


def unclosed_setup():
    # Dom C = {1}, but C runs forever on 0 so its tree never closes; Omega_U' = 9/16
    registry = Registry([TableComputer({'0': '0', '1': ''})])
    target = ProgramComputer(assemble('READ; JZ 3; HALT; PUSH1; JMP 3'), name='one-or-loop')
    return prepare_appendix_c(registry, target, 64)


class HaltingListTest(SimpleTestCase):
    # members must be prefix-free
    def test_prefix_violation(self):
        with self.assertRaises(PrefixViolation):
            HaltingList(frozenset({'0', '01'}), 3)
        print("PASSED: test_prefix_violation")

    # members must respect the bound
    def test_member_too_long(self):
        with self.assertRaises(ValueError):
            HaltingList(frozenset({'0110'}), 3)
        print("PASSED: test_member_too_long")

    # restriction only goes down
    def test_restrict(self):
        oracle = HaltingList(frozenset({'0', '10', '110'}), 3)
        self.assertEqual(set(oracle.restrict(2)), {'0', '10'})
        self.assertEqual(list(oracle), ['0', '10', '110'])
        with self.assertRaises(OracleBoundTooSmall):
            oracle.restrict(4)
        print("PASSED: test_restrict")

    # a snapshot with unsettled nodes is not an oracle
    def test_from_open_snapshot(self):
        snapshot = explore(closed_world.program('echo-one'), 1, 4)
        with self.assertRaises(NotClosedWorld):
            HaltingList.from_snapshot(snapshot, 2)
        print("PASSED: test_from_open_snapshot")


class OmegaPrefixTest(SimpleTestCase):
    # Omega = 1 reads as all ones
    def test_prefixes(self):
        self.assertEqual(omega_prefix(Dyadic(1), 3), '111')
        self.assertEqual(omega_prefix(Fraction(2, 3), 4), '1010')
        self.assertEqual(omega_prefix(Dyadic(23, 5), 0), '')
        print("PASSED: test_prefixes")

    # transcript lines spell the empty string as ^
    def test_transcript(self):
        transcript = Transcript()
        transcript.record('weaksim', '', True)
        transcript.record('member', '01', False)
        self.assertEqual(transcript.text(), 'weaksim ^ yes\nmember 01 no\n')
        self.assertEqual(len(transcript), 2)
        print("PASSED: test_transcript")


class Fact1Test(SimpleTestCase):
    # every table, every n
    def test_tables(self):
        for name in closed_world.TABLES:
            computer = closed_world.table(name)
            longest = max(len(key) for key in closed_world.TABLES[name])
            for n in range(longest + 2):
                prefix = omega_prefix(closed_world.table_omega(name), n)
                self.assertEqual(fact1_halting_from_omega(computer, prefix, 16), table_domain(name, n), (name, n))
        print("PASSED: test_tables")

    # non-dyadic Omegas of the infinite-domain programs
    def test_programs(self):
        for name, omega in closed_world.PROGRAM_OMEGAS.items():
            computer = closed_world.program(name)
            for n in range(11):
                domain = fact1_halting_from_omega(computer, omega_prefix(omega, n), 256)
                self.assertEqual(domain, closed_world.program_domain(name, n), (name, n))
        print("PASSED: test_programs")

    # the threshold consultation is logged
    def test_transcript(self):
        transcript = Transcript()
        fact1_halting_from_omega(closed_world.table('sparse'), '101', 16, transcript=transcript)
        self.assertEqual(len(transcript), 1)
        self.assertTrue(transcript.text().startswith('omega-threshold 101 '))
        print("PASSED: test_transcript")

    # a prefix that is too large or too small
    def test_invalid_prefix(self):
        with self.assertRaises(InvalidPrefix):
            fact1_halting_from_omega(closed_world.table('sparse'), '11111', 16)
        with self.assertRaises(InvalidPrefix):
            fact1_halting_from_omega(closed_world.table('three-leaves'), '00', 16)
        print("PASSED: test_invalid_prefix")

    # too shallow a search never crosses the threshold
    def test_budget_exhausted(self):
        with self.assertRaises(BudgetExhaustedError):
            fact1_halting_from_omega(closed_world.program('even-zeros'), '1010101010', 256, depth=4)
        print("PASSED: test_budget_exhausted")

    # a lower bound equal to 0.prefix + 2^-n already rules the prefix out
    def test_prefix_ceiling_reached(self):
        with self.assertRaises(InvalidPrefix):
            fact1_halting_from_omega(closed_world.table('sparse'), '10110', 64)
        self.assertEqual(fact1_halting_from_omega(closed_world.table('three-leaves'), '11', 16), table_domain('three-leaves', 2))
        print("PASSED: test_prefix_ceiling_reached")


class AppendixCTest(SimpleTestCase):
    # Omega_U' = Omega_C / 2 when the index computer is the only entry
    def test_tables(self):
        for name in closed_world.TABLES:
            setup = prepare_appendix_c(Registry(), closed_world.table(name))
            self.assertEqual(setup.constant, 1)
            omega = omega_exact(setup.registry.universal, 64, 12).value
            self.assertEqual(omega, closed_world.table_omega(name).to_fraction() / 2)
            longest = max(len(key) for key in closed_world.TABLES[name])
            for n in range(longest + 2):
                prefix = omega_prefix(omega, n + 1)
                domain = appendixC_halting_from_omega(setup, n, prefix, 64)
                self.assertEqual(domain, table_domain(name, n), (name, n))
        print("PASSED: test_tables")

    # infinite domains with Omega_U' = 1/3 and 2/7
    def test_programs(self):
        for name, omega in closed_world.PROGRAM_OMEGAS.items():
            setup = prepare_appendix_c(Registry(), closed_world.program(name))
            for n in range(8):
                prefix = omega_prefix(omega / 2, n + 1)
                domain = appendixC_halting_from_omega(setup, n, prefix, 256)
                self.assertEqual(domain, closed_world.program_domain(name, n), (name, n))
        print("PASSED: test_programs")

    # other entries also print small numerals
    def test_shared_registry(self):
        registry = Registry([TableComputer({'0': nat_to_string(0), '1': nat_to_string(1)})])
        setup = prepare_appendix_c(registry, closed_world.table('sparse'))
        self.assertEqual(setup.constant, 3)
        omega = Fraction(1, 2) + Fraction(23, 256)
        for n in range(7):
            domain = appendixC_halting_from_omega(setup, n, omega_prefix(omega, n + 3), 64)
            self.assertEqual(domain, table_domain('sparse', n), n)
        print("PASSED: test_shared_registry")

    # the prefix must cover n + d bits
    def test_short_prefix(self):
        setup = prepare_appendix_c(Registry(), closed_world.table('sparse'))
        with self.assertRaises(OracleBoundTooSmall):
            appendixC_halting_from_omega(setup, 4, '0101', 64)
        print("PASSED: test_short_prefix")

    # p_1 never appears and the tree never closes, so the budget runs out
    def test_unclosed_finite_domain(self):
        setup = unclosed_setup()
        self.assertEqual(setup.constant, 3)
        with self.assertRaises(BudgetExhaustedError):
            appendixC_halting_from_omega(setup, 0, '100', 64)
        self.assertTrue(setup.enumeration.finished)
        self.assertFalse(setup.enumeration.closed)
        self.assertEqual(setup.enumeration.members, ['1'])
        print("PASSED: test_unclosed_finite_domain")


class Main3Test(SimpleTestCase):
    def setUp(self):
        self.setup = prepare_appendix_c(Registry(), closed_world.table('sparse'))
        self.omega = Fraction(23, 64)

    # c = d1 + d2 and the output is Dom W below n + f(n) - c
    def test_bounded_f(self):
        for f, d1 in ((LengthFunction.const(0), None), (LengthFunction.const(2), 2)):
            for n in range(8):
                prefix = omega_prefix(self.omega, n)
                domain = main3_domain_from_omega(self.setup, n, prefix, f, d1, budget=64)
                self.assertEqual(domain, table_domain('sparse', n - 1), (str(f), n))
        print("PASSED: test_bounded_f")

    # unbounded f needs an explicit d1
    def test_unbounded_f(self):
        with self.assertRaises(ValueError):
            main3_domain_from_omega(self.setup, 4, '0101', LengthFunction.floorlog(1))
        with self.assertRaises(ValueError):
            main3_domain_from_omega(self.setup, 4, '0101', LengthFunction.const(3), d1=2)
        print("PASSED: test_unbounded_f")

    # with the bound shifted by c - f(n), Omega|(n - f(n) + c) gives Dom W|n
    def test_bound_offset(self):
        for f, d1 in ((LengthFunction.const(0), None), (LengthFunction.const(2), 2)):
            for n in range(7):
                prefix = omega_prefix(self.omega, n + 1)
                domain = main3_domain_from_omega(self.setup, n, prefix, f, d1, budget=64, bound_offset=1)
                self.assertEqual(domain, table_domain('sparse', n), (str(f), n))
        print("PASSED: test_bound_offset")

    # the prefix must cover the shifted bound
    def test_bound_offset_short_prefix(self):
        with self.assertRaises(OracleBoundTooSmall):
            main3_domain_from_omega(self.setup, 4, '0101', LengthFunction.const(0), bound_offset=1)
        print("PASSED: test_bound_offset_short_prefix")

    # a finite domain whose tree never closes runs out of budget
    def test_unclosed_finite_domain(self):
        setup = unclosed_setup()
        with self.assertRaises(BudgetExhaustedError):
            main3_domain_from_omega(setup, 4, '1001', LengthFunction.const(0), budget=64)
        print("PASSED: test_unclosed_finite_domain")


def closed_computers():
    computers = [closed_world.table(name) for name in closed_world.TABLES]
    computers += [closed_world.program(name) for name in closed_world.PROGRAMS]
    return computers


class WeaksimTest(SimpleTestCase):
    # agrees with running C on every input of length <= 8
    def test_ground_truth(self):
        for computer in closed_computers():
            setup = prepare_weaksim(Registry(), computer)
            oracle = universal_oracle(setup.registry, 9)
            view = OracleView(setup.registry, oracle)
            for p in strings_up_to(8):
                expected = computer.run(p, 256).halted
                self.assertEqual(weaksim_decide(setup, p, oracle, view=view), expected, (computer.name, p))
        print("PASSED: test_ground_truth")

    # answers depend only on the oracle below |p| + d
    def test_larger_oracle(self):
        setup = prepare_weaksim(Registry(), closed_world.program('even-zeros'))
        oracle = universal_oracle(setup.registry, 12)
        for p in ('1', '001', '01', '0001'):
            self.assertEqual(
                weaksim_decide(setup, p, oracle),
                weaksim_decide(setup, p, oracle.restrict(len(p) + 1)),
            )
        print("PASSED: test_larger_oracle")

    # the oracle must reach |p| + d
    def test_bound_too_small(self):
        setup = prepare_weaksim(Registry(), closed_world.program('echo-one'))
        oracle = universal_oracle(setup.registry, 2)
        with self.assertRaises(OracleBoundTooSmall):
            weaksim_decide(setup, '10', oracle)
        transcript = Transcript()
        self.assertTrue(weaksim_decide(setup, '1', oracle, transcript))
        self.assertEqual(transcript.text(), 'weaksim 1 yes\n')
        print("PASSED: test_bound_too_small")


class OccTest(SimpleTestCase):
    # Dom C|n for every closed fixture up to n = 6
    def test_ground_truth(self):
        for computer in closed_computers():
            setup = prepare_weaksim(Registry(), computer)
            oracle = universal_oracle(setup.registry, 7)
            for n in range(7):
                expected = explore(computer, 256, n).restrict(n)
                self.assertEqual(occ_domain_from_domain(setup, n, oracle), expected, (computer.name, n))
        print("PASSED: test_ground_truth")

    # both one-bit inputs of echo-one
    def test_echo(self):
        setup = prepare_weaksim(Registry(), closed_world.program('echo-one'))
        oracle = universal_oracle(setup.registry, 2)
        self.assertEqual(occ_domain_from_domain(setup, 1, oracle), frozenset({'0', '1'}))
        self.assertEqual(occ_domain_from_domain(setup, 0, oracle), frozenset())
        print("PASSED: test_echo")


class ThresholdBitExtractTest(SimpleTestCase):
    # every x of every width up to 8 by a full scan
    def test_linear(self):
        for m in range(9):
            for x in range(2 ** m):
                expected = format(x, f'0{m}b') if m else ''
                found = threshold_bit_extract(lambda s: int(s, 2) <= x, m)
                self.assertEqual(found, expected)
        print("PASSED: test_linear")

    # every x of every width up to 10 by bisection
    def test_binary(self):
        for m in range(11):
            for x in range(2 ** m):
                expected = format(x, f'0{m}b') if m else ''
                found = threshold_bit_extract(lambda s: int(s, 2) <= x, m, strategy='binary')
                self.assertEqual(found, expected)
        print("PASSED: test_binary")

    # the full scan asks every string once, in order
    def test_transcript(self):
        transcript = Transcript()
        threshold_bit_extract(lambda s: s <= '01', 2, transcript=transcript)
        self.assertEqual(transcript.text(), 'member 00 yes\nmember 01 yes\nmember 10 no\nmember 11 no\n')
        print("PASSED: test_transcript")

    # oracles that are not down-closed are caught
    def test_inconsistent(self):
        with self.assertRaises(InconsistentOracle):
            threshold_bit_extract(lambda s: s != '01', 2)
        with self.assertRaises(InconsistentOracle):
            threshold_bit_extract(lambda s: False, 3)
        with self.assertRaises(InconsistentOracle):
            threshold_bit_extract(lambda s: False, 3, strategy='binary')
        print("PASSED: test_inconsistent")


class IreTest(SimpleTestCase):
    def make_setup(self, alpha, f, horizon):
        # U'(00) = 3, U'(01) = 1
        registry = Registry([TableComputer({'0': '00', '1': '0'}, name='small-numerals')])
        return prepare_ire(registry, RealSource.exact(alpha), f, horizon, 64)

    # d = 3, d* = 00 and d0 = 4 for const:1 over sixteen codewords
    def test_constants(self):
        setup = self.make_setup(Fraction(1, 3), LengthFunction.const(1), 16)
        constants = setup.constants
        self.assertEqual((constants.d, constants.d_star, constants.h_d, constants.d0, constants.c), (3, '00', 2, 4, 9))
        print("PASSED: test_constants")

    # alpha|(n - f(n) - c) for every n in the horizon
    def test_bits(self):
        alphas = (Fraction(1, 3), Fraction(5, 8), closed_world.table_omega('eleven-sixteenths').to_fraction())
        for f, horizon in ((LengthFunction.const(1), 16), (LengthFunction.floorlog(2), 20)):
            for alpha in alphas:
                setup = self.make_setup(alpha, f, horizon)
                oracle = universal_oracle(setup.registry, horizon)
                for n in range(1, horizon + 1):
                    width = n - f(n) - setup.constants.c
                    bits = ire_extract_bits(setup, n, oracle.restrict(n))
                    self.assertEqual(bits, real_prefix(alpha, width), (str(f), alpha, n))
                    self.assertEqual(len(bits), max(width, 0))
        print("PASSED: test_bits")

    # a larger oracle gives the same answer
    def test_oracle_monotonicity(self):
        setup = self.make_setup(Fraction(5, 8), LengthFunction.const(1), 16)
        oracle = universal_oracle(setup.registry, 16)
        self.assertEqual(ire_extract_bits(setup, 14, oracle), ire_extract_bits(setup, 14, oracle.restrict(14)))
        print("PASSED: test_oracle_monotonicity")

    # short n take the empty branch; the horizon is a hard limit
    def test_edges(self):
        setup = self.make_setup(Fraction(5, 8), LengthFunction.const(1), 16)
        oracle = universal_oracle(setup.registry, 10)
        transcript = Transcript()
        self.assertEqual(ire_extract_bits(setup, 10, oracle, transcript), '')
        self.assertEqual(transcript.text(), 'lambda-branch 10 yes\n')
        with self.assertRaises(OracleBoundTooSmall):
            ire_extract_bits(setup, 12, oracle)
        with self.assertRaises(ValueError):
            ire_extract_bits(setup, 0, oracle)
        print("PASSED: test_edges")

    # Omega_W|n from Dom U'|(n + f(n) + c) when the bound is shifted by f(n) + c
    def test_bound_offset(self):
        f = LengthFunction.const(1)
        for name in ('sparse', 'eleven-sixteenths', 'zero-ten'):
            omega = closed_world.table_omega(name).to_fraction()
            setup = self.make_setup(omega, f, 16)
            offset = f(1) + setup.constants.c
            oracle = universal_oracle(setup.registry, 16)
            for n in range(1, 16 - offset + 1):
                bits = ire_extract_bits(setup, n, oracle.restrict(n + offset), bound_offset=offset)
                self.assertEqual(bits, omega_prefix(omega, n), (name, n))
        print("PASSED: test_bound_offset")


class IireTest(SimpleTestCase):
    def make_setup(self, alpha, f):
        # U'(00) = 14, U'(01) = 3
        registry = Registry([TableComputer({'0': nat_to_string(14), '1': nat_to_string(3)}, name='short-numerals')])
        return prepare_iire(registry, RealSource.exact(alpha), f, 64)

    # n = 14 has the two-bit program 00
    def test_bits(self):
        for alpha in (Fraction(1, 3), Fraction(5, 8)):
            setup = self.make_setup(alpha, LengthFunction.const(3))
            self.assertEqual((setup.constants.d, setup.constants.d_star, setup.constants.h_d), (3, '01', 2))
            oracle = universal_oracle(setup.registry, 14)
            self.assertEqual(iire_extract_bits(setup, 14, oracle), real_prefix(alpha, 14 - 3 - 3 - 2))
        print("PASSED: test_bits")

    # no program within f(n), or too little room after it
    def test_not_this_n(self):
        setup = self.make_setup(Fraction(1, 3), LengthFunction.const(0))
        oracle = universal_oracle(setup.registry, 14)
        self.assertIsNone(iire_extract_bits(setup, 14, oracle))
        setup = self.make_setup(Fraction(1, 3), LengthFunction.const(3))
        oracle = universal_oracle(setup.registry, 3)
        self.assertIsNone(iire_extract_bits(setup, 3, oracle))
        print("PASSED: test_not_this_n")

    # shifting the bound by f + d + H(d) turns n = 6 into the n = 14 run
    def test_bound_offset(self):
        omega = closed_world.table_omega('sparse').to_fraction()
        setup = self.make_setup(omega, LengthFunction.const(3))
        oracle = universal_oracle(setup.registry, 14)
        self.assertEqual(iire_extract_bits(setup, 6, oracle, bound_offset=8), real_prefix(omega, 6))
        with self.assertRaises(OracleBoundTooSmall):
            iire_extract_bits(setup, 6, oracle.restrict(13), bound_offset=8)
        print("PASSED: test_bound_offset")
