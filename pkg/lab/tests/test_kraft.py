import itertools
from fractions import Fraction

from django.test import SimpleTestCase

from lab.bits import Dyadic, is_prefix_free
from lab.exceptions import KraftExceeded
from lab.kraft import Allocator, LengthFunction, allocate_for, choose_shift, kraft_partial_sum


class AllocatorTest(SimpleTestCase):
    # two halves
    def test_one_one(self):
        allocator = Allocator()
        self.assertEqual([allocator.allocate(1), allocator.allocate(1)], ['0', '1'])
        print("PASSED: test_one_one")

    # a quarter then a half
    def test_two_one(self):
        allocator = Allocator()
        first = allocator.allocate(2)
        second = allocator.allocate(1)
        self.assertEqual((len(first), len(second)), (2, 1))
        self.assertTrue(is_prefix_free([first, second]))
        print("PASSED: test_two_one")

    # three halves do not fit
    def test_one_one_one(self):
        allocator = Allocator()
        allocator.allocate(1)
        allocator.allocate(1)
        with self.assertRaises(KraftExceeded):
            allocator.allocate(1)
        print("PASSED: test_one_one_one")

    # succeeds exactly while the Kraft sum stays at most 1
    def test_brute_force_equivalence(self):
        for size in range(1, 7):
            for lengths in itertools.product(range(5), repeat=size):
                allocator = Allocator()
                total = Dyadic(0)
                for length in lengths:
                    total += Dyadic.unit(length)
                    if total > 1:
                        with self.assertRaises(KraftExceeded):
                            allocator.allocate(length)
                        break
                    allocator.allocate(length)
                else:
                    codewords = allocator.codewords
                    self.assertEqual([len(c) for c in codewords], list(lengths))
                    self.assertTrue(is_prefix_free(codewords))
                    self.assertEqual(allocator.kraft_spent, total)
        print("PASSED: test_brute_force_equivalence")

    # negative lengths are refused
    def test_negative_length(self):
        with self.assertRaises(ValueError):
            Allocator().allocate(-1)
        print("PASSED: test_negative_length")


class LengthFunctionTest(SimpleTestCase):
    # the three kinds of f
    def test_values(self):
        self.assertEqual(LengthFunction.const(3)(5), 3)
        self.assertEqual(LengthFunction.floorlog(1)(1023), 9)
        self.assertEqual(LengthFunction.floorlog(1)(1024), 10)
        self.assertEqual(LengthFunction.floorlog(Fraction(3, 2))(16), 6)
        self.assertEqual(LengthFunction.floorlog(2)(3), 3)
        self.assertEqual(LengthFunction.from_table([3, 2])(5), 2)
        print("PASSED: test_values")

    # text forms
    def test_parse(self):
        self.assertEqual(LengthFunction.parse('const:2'), LengthFunction.const(2))
        self.assertEqual(LengthFunction.parse('floorlog:3/2')(16), 6)
        self.assertEqual(str(LengthFunction.parse('floorlog:1')), 'floorlog:1')
        with self.assertRaises(ValueError):
            LengthFunction.parse('log:1')
        print("PASSED: test_parse")

    # f is defined on positive integers only
    def test_domain(self):
        with self.assertRaises(ValueError):
            LengthFunction.const(1)(0)
        print("PASSED: test_domain")

    # sup f when known
    def test_upper_bound(self):
        self.assertEqual(LengthFunction.const(2).upper_bound(), 2)
        self.assertEqual(LengthFunction.from_table([1, 4, 2]).upper_bound(), 4)
        self.assertIsNone(LengthFunction.floorlog(1).upper_bound())
        print("PASSED: test_upper_bound")


class KraftSumTest(SimpleTestCase):
    # floor(log2 n) lengths sum to 10 by N = 1023
    def test_floorlog_one_diverges(self):
        total = kraft_partial_sum(LengthFunction.floorlog(1), 1023)
        self.assertEqual(total, Dyadic(10))
        self.assertGreaterEqual(total, 5)
        print("PASSED: test_floorlog_one_diverges")

    # floor(2 log2 n) lengths stay bounded up to a million
    def test_floorlog_two_bounded(self):
        f = LengthFunction.floorlog(2)
        self.assertLess(kraft_partial_sum(f, 10 ** 6), Fraction(66, 10))
        print("PASSED: test_floorlog_two_bounded")

    # block summation agrees with term by term
    def test_blocks_match_terms(self):
        for f in (LengthFunction.floorlog(1), LengthFunction.floorlog(2), LengthFunction.floorlog(Fraction(3, 2))):
            direct = Dyadic(0)
            for n in range(1, 301):
                direct += Dyadic.unit(f(n))
            self.assertEqual(kraft_partial_sum(f, 300), direct)
        print("PASSED: test_blocks_match_terms")

    # constant and empty sums
    def test_simple_sums(self):
        self.assertEqual(kraft_partial_sum(LengthFunction.const(1), 16), Dyadic(8))
        self.assertEqual(kraft_partial_sum(LengthFunction.const(1), 0), Dyadic(0))
        print("PASSED: test_simple_sums")

    # smallest shift keeping the horizon sum at most one half
    def test_choose_shift(self):
        self.assertEqual(choose_shift(LengthFunction.const(1), 16), 4)
        self.assertEqual(choose_shift(LengthFunction.const(0), 2), 2)
        self.assertEqual(choose_shift(LengthFunction.const(3), 2), 0)
        print("PASSED: test_choose_shift")

    # shifted codewords have the right lengths and are prefix-free
    def test_allocate_for(self):
        codewords = allocate_for(LengthFunction.const(1), 4, 16)
        self.assertEqual(len(codewords), 16)
        self.assertTrue(all(len(c) == 5 for c in codewords))
        self.assertTrue(is_prefix_free(codewords))
        print("PASSED: test_allocate_for")
