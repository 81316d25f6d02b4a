import unittest
from collections import Counter

import tests.unit.pattpeak.combinat.testenv  # noqa: F401
from tests.unit.pattpeak.combinat.testenv import SLOW_TESTS

from apps.pattpeak.combinat.exceptions import DegreeMismatchError
from apps.pattpeak.combinat.exceptions import UnknownClosedFormError
from apps.pattpeak.combinat.pattern_peak import APPENDIX
from apps.pattpeak.combinat.pattern_peak import APPENDIX_ERRATA
from apps.pattpeak.combinat.pattern_peak import ClosedFormIncludeDelta
from apps.pattpeak.combinat.pattern_peak import ClosedFormRow2
from apps.pattpeak.combinat.pattern_peak import ClosedFormRow3
from apps.pattpeak.combinat.pattern_peak import ClosedFormRow5
from apps.pattpeak.combinat.pattern_peak import TABLE1
from apps.pattpeak.combinat.pattern_peak import closed_form
from apps.pattpeak.combinat.pattern_peak import conjecture_check
from apps.pattpeak.combinat.pattern_peak import find_closed_form
from apps.pattpeak.combinat.pattern_peak import find_nonsymmetric_witness
from apps.pattpeak.combinat.pattern_peak import include_delta_divergence
from apps.pattpeak.combinat.pattern_peak import include_delta_formula
from apps.pattpeak.combinat.pattern_peak import include_delta_patterns
from apps.pattpeak.combinat.pattern_peak import include_delta_printed
from apps.pattpeak.combinat.pattern_peak import pattern_fundamental
from apps.pattpeak.combinat.pattern_peak import r_n
from apps.pattpeak.combinat.pattern_peak import r_n_from_histogram
from apps.pattpeak.combinat.pattern_peak import shuffle_formula_rhs
from apps.pattpeak.combinat.pattern_peak import table1_row_of
from apps.pattpeak.combinat.permutations import IndexSet
from apps.pattpeak.combinat.permutations import PatternSet
from apps.pattpeak.combinat.permutations import shuffle_pattern_sets
from apps.pattpeak.combinat.qsym import QsymExpr
from apps.pattpeak.combinat.qsym import is_symmetric
from apps.pattpeak.combinat.qsym import k_to_f
from apps.pattpeak.combinat.schurq import NotInSpan
from apps.pattpeak.combinat.schurq import SchurQExpansion
from apps.pattpeak.combinat.schurq import expand_in_schurq
from apps.pattpeak.combinat.schurq import is_schurq_positive
from apps.pattpeak.combinat.tableaux import StrictPartition


def Pi(text):
    return PatternSet.from_str(text)


def X(n, pairs):
    return SchurQExpansion.from_pairs(n, pairs)


COUNTEREXAMPLE = '1234,1243,2413,3142,3412,4123'


class TestUnitPeakFunction(unittest.TestCase):

    def test_unit_r3_without_patterns(self):
        self.assertEqual(r_n(Pi('{}'), 3),
                         QsymExpr.peak([], 3, 4) + QsymExpr.peak([2], 3, 2))

    def test_unit_small_degrees(self):
        self.assertEqual(r_n(Pi('132'), 0), QsymExpr.peak([], 0))
        self.assertEqual(r_n(Pi('132'), 1), QsymExpr.peak([], 1))
        self.assertEqual(expand_in_schurq(r_n(Pi('132'), 2)), X(2, [((2,), 2)]))

    def test_unit_rejects_negative_degree(self):
        with self.assertRaises(DegreeMismatchError):
            r_n(Pi('132'), -1)

    def test_unit_from_histogram(self):
        histogram = Counter({IndexSet([], 3): 4, IndexSet([2], 3): 2})
        self.assertEqual(r_n_from_histogram(histogram, 3), r_n(Pi('{}'), 3))

    def test_unit_fundamental_expansion_matches_peak_expansion(self):
        for text in ('{}', '132', '213,231', '1234'):
            for n in range(1, 7):
                with self.subTest(patterns=text, n=n):
                    self.assertEqual(k_to_f(r_n(Pi(text), n)).degree, n)
                    self.assertEqual(sum(pattern_fundamental(Pi(text), n)
                                         .terms.values()),
                                     sum(r_n(Pi(text), n).terms.values()))

    def test_unit_r4_of_1234(self):
        self.assertEqual(expand_in_schurq(r_n(Pi('1234'), 4)),
                         X(4, [((4,), 7), ((3, 1), 8)]))


class TestUnitTable1(unittest.TestCase):

    def test_unit_rows_match_enumeration(self):
        for row in TABLE1:
            for patterns in row.pattern_sets():
                for n in range(3, 9):
                    with self.subTest(row=row.ROW, patterns=str(patterns), n=n):
                        self.assertEqual(expand_in_schurq(r_n(patterns, n)),
                                         closed_form(row.ROW, n))

    def test_unit_small_n_is_multiple_of_single_row(self):
        for text in ('{}', '123', '132,213', '132,213,231,312'):
            for n in (1, 2):
                with self.subTest(patterns=text, n=n):
                    self.assertEqual(expand_in_schurq(r_n(Pi(text), n)),
                                     X(n, [((n,), n)]))

    def test_unit_row_lookup(self):
        self.assertIs(table1_row_of(Pi('321')), ClosedFormRow2)
        self.assertIs(table1_row_of(Pi('312,132')), ClosedFormRow3)
        self.assertIsNone(table1_row_of(Pi('132')))

    def test_unit_known_values(self):
        self.assertEqual(closed_form('row3', 6),
                         X(6, [((6,), 6), ((5, 1), 4), ((4, 2), 2)]))
        self.assertEqual(closed_form(4, 5), X(5, [((5,), 16)]))
        self.assertEqual(closed_form('row5', 4), X(4, [((4,), 2), ((3, 1), 1)]))

    def test_unit_aliases(self):
        self.assertIsInstance(find_closed_form('r321', 5), ClosedFormRow2)
        self.assertIsInstance(find_closed_form('r132_312', 5), ClosedFormRow3)
        self.assertIsInstance(find_closed_form('shuffle_case', 5), ClosedFormRow5)
        self.assertIsInstance(find_closed_form('ROW2', 5), ClosedFormRow2)

    def test_unit_include_delta_identifier(self):
        form = find_closed_form('include_delta(4)', 6)
        self.assertIsInstance(form, ClosedFormIncludeDelta)
        self.assertEqual(form.j, 4)
        self.assertEqual(form.pattern_sets(), [include_delta_patterns(4)])

    def test_unit_unknown_identifiers(self):
        for identifier in ('row9', 'nothing', 'includedelta', 9):
            with self.subTest(identifier=identifier):
                with self.assertRaises(UnknownClosedFormError):
                    find_closed_form(identifier, 5)

    def test_unit_closed_forms_need_n_at_least_three(self):
        with self.assertRaises(DegreeMismatchError):
            closed_form('row1', 2)


class TestUnitSymmetry(unittest.TestCase):

    def test_unit_first_nonsymmetric_degree(self):
        self.assertEqual(find_nonsymmetric_witness(Pi('132'), 8), 5)
        self.assertIsNone(find_nonsymmetric_witness(Pi('321'), 8))
        self.assertIsNone(find_nonsymmetric_witness(Pi('132'), 4))

    def test_unit_witness_uses_supplied_function(self):
        calls = []

        def compute(patterns, n):
            calls.append(n)
            return r_n(patterns, n)

        find_nonsymmetric_witness(Pi('132'), 8, compute=compute)
        self.assertEqual(calls, [1, 2, 3, 4, 5])

    def test_unit_symmetric_but_not_positive(self):
        expr = r_n(Pi(COUNTEREXAMPLE), 6)
        self.assertTrue(is_symmetric(expr))
        expansion = expand_in_schurq(expr)
        self.assertEqual(expansion, X(6, [((6,), 10), ((5, 1), 12), ((4, 2), 8),
                                          ((3, 2, 1), -1)]))
        self.assertFalse(is_schurq_positive(expansion))


class TestUnitIncludeDelta(unittest.TestCase):

    def test_unit_matches_enumeration(self):
        for j in (2, 3, 4, 5):
            for n in range(1, 9):
                with self.subTest(j=j, n=n):
                    self.assertEqual(
                        expand_in_schurq(r_n(include_delta_patterns(j), n)),
                        include_delta_formula(j, n))

    def test_unit_small_case(self):
        self.assertEqual(include_delta_formula(3, 3),
                         X(3, [((3,), 2), ((2, 1), 1)]))
        self.assertEqual(include_delta_formula(2, 7), X(7, [((7,), 1)]))

    def test_unit_printed_form_diverges_only_for_small_n(self):
        self.assertEqual(include_delta_printed(5, 3),
                         X(3, [((3,), 4), ((2, 1), 3)]))
        self.assertEqual(include_delta_divergence(5, 3),
                         [StrictPartition((3,)), StrictPartition((2, 1))])
        self.assertEqual(include_delta_divergence(4, 8), [])

    def test_unit_rejects_bad_parameters(self):
        with self.assertRaises(DegreeMismatchError):
            include_delta_formula(1, 5)
        with self.assertRaises(DegreeMismatchError):
            include_delta_printed(3, 0)


class TestUnitShuffleFormula(unittest.TestCase):

    def test_unit_formula_matches_direct_computation(self):
        for a, b in (('12', '1'), ('21', '1'), ('1', '12')):
            for n in range(1, 8):
                with self.subTest(a=a, b=b, n=n):
                    self.assertEqual(
                        r_n(shuffle_pattern_sets(Pi(a), Pi(b)), n),
                        shuffle_formula_rhs(Pi(a), Pi(b), n))

    def test_unit_shuffle_sets_are_row5(self):
        for text in ClosedFormRow5.SHUFFLE_SETS:
            for n in range(ClosedFormRow5.MIN_N, 8):
                with self.subTest(patterns=text, n=n):
                    self.assertEqual(expand_in_schurq(r_n(Pi(text), n)),
                                     X(n, [((n,), 2), ((n - 1, 1), 1)]))
            with self.subTest(patterns=text, n=2):
                self.assertEqual(expand_in_schurq(r_n(Pi(text), 2)),
                                 X(2, [((2,), 2)]))


class TestUnitConjecture(unittest.TestCase):

    def test_unit_appendix_values(self):
        limit = 9 if SLOW_TESTS else 7
        for k, table in APPENDIX.items():
            for n, expected in table.items():
                if n > limit:
                    continue
                with self.subTest(k=k, n=n):
                    report = conjecture_check(k, n)
                    self.assertTrue(report.symmetric)
                    self.assertTrue(report.q_positive)
                    self.assertEqual(report.expansion, expected)

    def test_unit_precomputed_expression(self):
        expr = r_n(Pi('1234'), 4)
        report = conjecture_check(4, 4, expr=expr)
        self.assertEqual(report.expansion, X(4, [((4,), 7), ((3, 1), 8)]))
        self.assertGreaterEqual(report.elapsed_ms, 0)

    def test_unit_not_in_span_is_not_positive(self):
        report = conjecture_check(4, 4, expr=QsymExpr.peak([2], 4))
        self.assertFalse(report.symmetric)
        self.assertIsInstance(report.expansion, NotInSpan)
        self.assertFalse(report.q_positive)

    def test_unit_rejects_small_k(self):
        with self.assertRaises(DegreeMismatchError):
            conjecture_check(1, 3)

    def test_unit_errata(self):
        for erratum in APPENDIX_ERRATA:
            with self.subTest(k=erratum.k, n=erratum.n):
                self.assertNotEqual(erratum.printed, erratum.corrected)
                self.assertEqual(conjecture_check(erratum.k, erratum.n).expansion,
                                 erratum.corrected)


if __name__ == '__main__':
    unittest.main()
