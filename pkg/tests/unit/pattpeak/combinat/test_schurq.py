import unittest
from fractions import Fraction

import tests.unit.pattpeak.combinat.testenv  # noqa: F401

from apps.pattpeak.combinat.exceptions import BasisMismatchError
from apps.pattpeak.combinat.exceptions import DegreeMismatchError
from apps.pattpeak.combinat.permutations import IndexSet
from apps.pattpeak.combinat.qsym import QsymExpr
from apps.pattpeak.combinat.schurq import NotInSpan
from apps.pattpeak.combinat.schurq import SchurQExpansion
from apps.pattpeak.combinat.schurq import expand_in_schurq
from apps.pattpeak.combinat.schurq import is_schurq_positive
from apps.pattpeak.combinat.schurq import peak_sets
from apps.pattpeak.combinat.schurq import q_over_p_scalar
from apps.pattpeak.combinat.schurq import schur_q
from apps.pattpeak.combinat.tableaux import StrictPartition
from apps.pattpeak.combinat.tableaux import strict_partitions


def K(elements, n, coeff=1):
    return QsymExpr.peak(elements, n, coeff)


class TestUnitSchurQ(unittest.TestCase):

    def test_unit_small_shapes(self):
        self.assertEqual(schur_q((4,)), K([], 4))
        self.assertEqual(schur_q((2, 1)), K([2], 3))
        self.assertEqual(schur_q((3, 1)), K([2], 4) + K([3], 4))
        self.assertEqual(schur_q(StrictPartition((3, 2, 1))),
                         K([3, 5], 6) + K([2, 4], 6))

    def test_unit_peak_set_counts(self):
        self.assertEqual([len(peak_sets(n)) for n in range(1, 9)],
                         [1, 1, 2, 3, 5, 8, 13, 21])
        self.assertEqual(peak_sets(5)[0], IndexSet([], 5))
        self.assertEqual(peak_sets(5)[-1], IndexSet([2, 4], 5))

    def test_unit_q_over_p(self):
        self.assertEqual(q_over_p_scalar((5,)), 2)
        self.assertEqual(q_over_p_scalar((3, 2, 1)), 8)


class TestUnitExpansion(unittest.TestCase):

    def test_unit_expands_r3(self):
        x = expand_in_schurq(K([], 3, 4) + K([2], 3, 2))
        self.assertEqual(x, SchurQExpansion.from_pairs(3, [((3,), 4), ((2, 1), 2)]))
        self.assertEqual(str(x), '4*Q(3) + 2*Q(2,1)')

    def test_unit_recovers_every_basis_element(self):
        for n in range(1, 9):
            for shape in strict_partitions(n):
                with self.subTest(shape=str(shape)):
                    x = expand_in_schurq(schur_q(shape))
                    self.assertEqual(x, SchurQExpansion(n, {shape: 1}))

    def test_unit_round_trip_through_k(self):
        x = SchurQExpansion.from_pairs(6, [((6,), 16), ((5, 1), 40),
                                           ((4, 2), 61), ((3, 2, 1), 15)])
        self.assertEqual(expand_in_schurq(x.to_k()), x)

    def test_unit_negative_coefficients(self):
        x = SchurQExpansion.from_pairs(5, [((5,), 3), ((3, 2), -2)])
        self.assertEqual(expand_in_schurq(x.to_k()), x)
        self.assertFalse(is_schurq_positive(x))
        self.assertEqual(str(x), '3*Q(5) - 2*Q(3,2)')

    def test_unit_zero(self):
        x = expand_in_schurq(QsymExpr.zero(5))
        self.assertTrue(x.is_zero)
        self.assertTrue(is_schurq_positive(x))
        self.assertEqual(str(x), '0')

    def test_unit_not_in_span(self):
        x = expand_in_schurq(K([2], 4))
        self.assertIsInstance(x, NotInSpan)
        self.assertEqual(x.witness, IndexSet([3], 4))
        self.assertEqual(x.residual, {IndexSet([3], 4): -1})
        self.assertEqual(str(x), 'not in span of Q at degree 4: residual -1 at K{3}')

    def test_unit_rejects_other_bases(self):
        with self.assertRaises(BasisMismatchError):
            expand_in_schurq(QsymExpr.fundamental((2, 1)))


class TestUnitSchurQExpansion(unittest.TestCase):

    def test_unit_display_order(self):
        x = SchurQExpansion.from_pairs(9, [((4, 3, 2), 1), ((5, 4), 1), ((6, 3), 1)])
        self.assertEqual(str(x), '1*Q(6,3) + 1*Q(5,4) + 1*Q(4,3,2)')

    def test_unit_addition_and_cancellation(self):
        a = SchurQExpansion.from_pairs(4, [((4,), 7), ((3, 1), 8)])
        b = SchurQExpansion.from_pairs(4, [((3, 1), -8)])
        self.assertEqual(a + b, SchurQExpansion.from_pairs(4, [((4,), 7)]))
        with self.assertRaises(DegreeMismatchError):
            a + SchurQExpansion(3)

    def test_unit_rejects_wrong_weight(self):
        with self.assertRaises(DegreeMismatchError):
            SchurQExpansion.from_pairs(4, [((3,), 1)])

    def test_unit_p_expansion(self):
        x = SchurQExpansion.from_pairs(4, [((4,), 7), ((3, 1), 8)])
        self.assertEqual(x.to_p_expansion(),
                         SchurQExpansion.from_pairs(4, [((4,), 14), ((3, 1), 32)]))

    def test_unit_fractional_coefficients(self):
        x = SchurQExpansion.from_pairs(2, [((2,), Fraction(1, 2))])
        self.assertFalse(x.is_integral)
        self.assertEqual(x.coefficient((2,)), Fraction(1, 2))
        with self.assertRaises(BasisMismatchError):
            x.to_k()


if __name__ == '__main__':
    unittest.main()
