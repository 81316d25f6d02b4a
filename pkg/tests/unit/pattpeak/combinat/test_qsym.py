import unittest

from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st
from sympy import symbols

import tests.unit.pattpeak.combinat.testenv  # noqa: F401

from apps.pattpeak.combinat.exceptions import BasisMismatchError
from apps.pattpeak.combinat.exceptions import DegreeMismatchError
from apps.pattpeak.combinat.exceptions import InvalidIndexSetError
from apps.pattpeak.combinat.exceptions import InvalidShapeError
from apps.pattpeak.combinat.permutations import IndexSet
from apps.pattpeak.combinat.permutations import peak_set
from apps.pattpeak.combinat.qsym import BASIS_F
from apps.pattpeak.combinat.qsym import BASIS_K
from apps.pattpeak.combinat.qsym import BASIS_M
from apps.pattpeak.combinat.qsym import Composition
from apps.pattpeak.combinat.qsym import QsymExpr
from apps.pattpeak.combinat.qsym import comp_set
from apps.pattpeak.combinat.qsym import compositions
from apps.pattpeak.combinat.qsym import f_to_m
from apps.pattpeak.combinat.qsym import is_symmetric
from apps.pattpeak.combinat.qsym import k_to_f
from apps.pattpeak.combinat.qsym import peak_label
from apps.pattpeak.combinat.qsym import quasi_shuffle_product
from apps.pattpeak.combinat.qsym import representative_perm
from apps.pattpeak.combinat.qsym import reverse_m
from apps.pattpeak.combinat.qsym import specialize
from apps.pattpeak.combinat.qsym import to_m
from apps.pattpeak.combinat.schurq import peak_sets


PEAK_BASIS = [(n, s) for n in range(1, 5) for s in peak_sets(n)]


def K(elements, n, coeff=1):
    return QsymExpr.peak(elements, n, coeff)


def _is_symmetric_polynomial(poly, m):
    gens = symbols(f"x1:{m + 1}")
    expr = poly.as_expr()
    for i in range(m - 1):
        swapped = expr.subs({gens[i]: gens[i + 1], gens[i + 1]: gens[i]},
                            simultaneous=True)
        if (swapped - expr).expand() != 0:
            return False
    return True


class TestUnitComposition(unittest.TestCase):

    def test_unit_comp_set(self):
        self.assertEqual(comp_set(Composition((2, 1))), IndexSet([2], 3))
        self.assertEqual(comp_set(Composition((1, 2, 1))), IndexSet([1, 3], 4))
        self.assertEqual(comp_set(Composition((4,))), IndexSet([], 4))

    def test_unit_from_set_inverts_comp_set(self):
        for n in range(1, 7):
            for c in compositions(n):
                self.assertEqual(Composition.from_set(comp_set(c), n), c)

    def test_unit_counts(self):
        for n in range(1, 9):
            self.assertEqual(len(list(compositions(n))), 2 ** (n - 1))

    def test_unit_rejects_non_positive_parts(self):
        with self.assertRaises(InvalidShapeError):
            Composition((2, 0, 1))


class TestUnitQsymExpr(unittest.TestCase):

    def test_unit_text(self):
        e = K([], 3, 4) + K([2], 3, 2)
        self.assertEqual(str(e), '4*K{} + 2*K{2}')
        self.assertEqual(str(QsymExpr.monomial((2, 1), -3)), '-3*M(2,1)')
        self.assertEqual(str(QsymExpr.zero(4)), '0')
        self.assertEqual(peak_label(IndexSet([2, 5], 7)), 'K{2,5}')

    def test_unit_cancellation_drops_terms(self):
        e = K([2], 4) - K([2], 4)
        self.assertTrue(e.is_zero)
        self.assertEqual(e, QsymExpr.zero(4))

    def test_unit_scalar_multiplication(self):
        self.assertEqual(3 * K([2], 3), K([2], 3, 3))
        self.assertEqual((K([2], 3) * 2).coefficient([2]), 2)

    def test_unit_rejects_mixed_bases(self):
        with self.assertRaises(BasisMismatchError):
            K([], 2) + QsymExpr.fundamental((2,))
        with self.assertRaises(BasisMismatchError):
            K([], 2) * QsymExpr.fundamental((2,))
        with self.assertRaises(BasisMismatchError):
            QsymExpr(2, 'Q')

    def test_unit_rejects_mixed_degrees(self):
        with self.assertRaises(DegreeMismatchError):
            K([], 2) + K([], 3)
        with self.assertRaises(DegreeMismatchError):
            QsymExpr(4, BASIS_M, {(2, 1): 1})

    def test_unit_rejects_non_peak_index(self):
        with self.assertRaises(InvalidIndexSetError):
            K([2, 3], 5)
        with self.assertRaises(InvalidIndexSetError):
            QsymExpr(4, BASIS_K, {IndexSet([1], 4): 1})


class TestUnitBasisChanges(unittest.TestCase):

    def test_unit_k_to_f_small_cases(self):
        self.assertEqual(k_to_f(K([], 1)), QsymExpr.fundamental((1,), 2))
        self.assertEqual(k_to_f(K([], 2)),
                         QsymExpr(2, BASIS_F, {(2,): 2, (1, 1): 2}))
        self.assertEqual(k_to_f(K([2], 3)),
                         QsymExpr(3, BASIS_F, {(2, 1): 4, (1, 2): 4}))

    def test_unit_f_to_m(self):
        self.assertEqual(f_to_m(QsymExpr.fundamental((2, 1))),
                         QsymExpr(3, BASIS_M, {(2, 1): 1, (1, 1, 1): 1}))
        self.assertEqual(f_to_m(QsymExpr.fundamental((3,))),
                         QsymExpr(3, BASIS_M, {(3,): 1, (2, 1): 1, (1, 2): 1,
                                               (1, 1, 1): 1}))

    def test_unit_to_m_leaves_m_alone(self):
        m = QsymExpr.monomial((1, 2))
        self.assertIs(to_m(m), m)

    def test_unit_basis_change_requires_input_basis(self):
        with self.assertRaises(BasisMismatchError):
            k_to_f(QsymExpr.fundamental((2,)))
        with self.assertRaises(BasisMismatchError):
            f_to_m(K([], 2))
        with self.assertRaises(BasisMismatchError):
            reverse_m(K([], 2))

    def test_unit_reverse_m(self):
        self.assertEqual(reverse_m(QsymExpr.monomial((1, 2), 5)),
                         QsymExpr.monomial((2, 1), 5))


class TestUnitSymmetry(unittest.TestCase):

    def test_unit_known_cases(self):
        self.assertTrue(is_symmetric(K([], 4)))
        self.assertTrue(is_symmetric(K([2], 3)))
        self.assertTrue(is_symmetric(K([2], 4) + K([3], 4)))
        self.assertFalse(is_symmetric(K([2], 4)))
        self.assertFalse(is_symmetric(QsymExpr.fundamental((1, 2))))
        self.assertTrue(is_symmetric(QsymExpr(3, BASIS_M, {(1, 2): 1, (2, 1): 1})))

    def test_unit_agrees_with_specialization(self):
        for n, s in PEAK_BASIS:
            with self.subTest(n=n, s=str(s)):
                e = QsymExpr(n, BASIS_K, {s: 1})
                self.assertEqual(is_symmetric(e),
                                 _is_symmetric_polynomial(specialize(e, n), n))

    def test_unit_specialize_one_variable(self):
        x1 = symbols('x1')
        self.assertEqual(specialize(K([], 3), 1).as_expr(), 2 * x1 ** 3)

    def test_unit_specialize_zero_polynomial(self):
        # M(1,1,1) needs at least three variables
        self.assertTrue(specialize(QsymExpr.monomial((1, 1, 1)), 2).is_zero)

    def test_unit_specialize_rejects_no_variables(self):
        with self.assertRaises(ValueError):
            specialize(K([], 2), 0)


class TestUnitProducts(unittest.TestCase):

    def test_unit_representative_perm(self):
        for n in range(1, 9):
            for s in peak_sets(n):
                p = representative_perm(s)
                self.assertEqual(peak_set(p), s)

    def test_unit_representative_perm_rejects_non_peak_set(self):
        with self.assertRaises(InvalidIndexSetError):
            representative_perm(IndexSet([2, 3], 5))

    def test_unit_degree_one_square(self):
        self.assertEqual(K([], 1) * K([], 1), K([], 2, 2))

    def test_unit_product_of_r3(self):
        r3 = K([], 3, 4) + K([2], 3, 2)
        self.assertEqual((r3 * K([], 1)).degree, 4)
        # 6 permutations shuffled with one letter give 24 terms
        self.assertEqual(sum((r3 * K([], 1)).terms.values()), 24)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(PEAK_BASIS), st.sampled_from(PEAK_BASIS))
    def test_unit_peak_product_matches_quasi_shuffle(self, left, right):
        (n1, s1), (n2, s2) = left, right
        a = QsymExpr(n1, BASIS_K, {s1: 1})
        b = QsymExpr(n2, BASIS_K, {s2: 1})
        self.assertEqual(to_m(a * b), quasi_shuffle_product(to_m(a), to_m(b)))

    def test_unit_quasi_shuffle_small_case(self):
        product = QsymExpr.monomial((1,)) * QsymExpr.monomial((1,))
        self.assertEqual(product, QsymExpr(2, BASIS_M, {(1, 1): 2, (2,): 1}))

    def test_unit_product_is_commutative_on_classes(self):
        a = K([], 2) + K([], 2)
        b = K([2], 3)
        self.assertEqual(a * b, b * a)


if __name__ == '__main__':
    unittest.main()
