import json
import unittest
from fractions import Fraction

import tests.unit.pattpeak.cli.testenv  # noqa: F401

from apps.pattpeak.cli.render import NotInSpanModel
from apps.pattpeak.cli.render import QsymExprModel
from apps.pattpeak.cli.render import Renderer
from apps.pattpeak.cli.render import RendererJson
from apps.pattpeak.cli.render import RendererLatex
from apps.pattpeak.cli.render import RendererText
from apps.pattpeak.cli.render import SchurQExpansionModel
from apps.pattpeak.combinat.insertion import rsk
from apps.pattpeak.combinat.pattern_peak import conjecture_check
from apps.pattpeak.combinat.permutations import IndexSet
from apps.pattpeak.combinat.permutations import PatternSet
from apps.pattpeak.combinat.permutations import Permutation
from apps.pattpeak.combinat.qsym import QsymExpr
from apps.pattpeak.combinat.qsym import f_to_m
from apps.pattpeak.combinat.qsym import k_to_f
from apps.pattpeak.combinat.schurq import SchurQExpansion
from apps.pattpeak.combinat.schurq import expand_in_schurq
from apps.pattpeak.combinat.verifiers import CheckResult


R3 = QsymExpr.peak([], 3, 4) + QsymExpr.peak([2], 3, 2)
X4 = SchurQExpansion.from_pairs(4, [((4,), 7), ((3, 1), 8)])


class TestUnitRendererLookup(unittest.TestCase):

    def test_unit_for_format(self):
        self.assertIsInstance(Renderer.for_format('text'), RendererText)
        self.assertIsInstance(Renderer.for_format('json'), RendererJson)
        self.assertIsInstance(Renderer.for_format('latex'), RendererLatex)

    def test_unit_unknown_format(self):
        with self.assertRaises(ValueError):
            Renderer.for_format('yaml')


class TestUnitWireModels(unittest.TestCase):

    def test_unit_qsym_round_trip(self):
        for e in (R3, k_to_f(R3), f_to_m(k_to_f(R3))):
            with self.subTest(basis=e.basis):
                model = QsymExprModel.model_validate_json(RendererJson().qsym(e))
                self.assertEqual(model.to_expr(), e)

    def test_unit_qsym_json_layout(self):
        data = json.loads(RendererJson().qsym(R3))
        self.assertEqual(data, {'degree': 3, 'basis': 'K', 'terms': [
            {'index': [], 'coeff': 4}, {'index': [2], 'coeff': 2}]})

    def test_unit_expansion_keeps_fractions(self):
        x = SchurQExpansion.from_pairs(3, [((3,), Fraction(1, 2)), ((2, 1), -3)])
        text = RendererJson().expansion(x)
        self.assertIn('"1/2"', text)
        self.assertEqual(SchurQExpansionModel.model_validate_json(text).to_expansion(), x)

    def test_unit_not_in_span_round_trip(self):
        x = expand_in_schurq(QsymExpr.peak([2], 4))
        model = NotInSpanModel.model_validate_json(RendererJson().not_in_span(x))
        self.assertFalse(model.in_span)
        self.assertEqual(model.witness, [3])
        self.assertEqual(model.to_result(), x)


class TestUnitRendererText(unittest.TestCase):

    def setUp(self):
        self.renderer = RendererText()

    def test_unit_algebra(self):
        self.assertEqual(self.renderer.qsym(R3), '4*K{} + 2*K{2}')
        self.assertEqual(self.renderer.expansion(X4), '7*Q(4) + 8*Q(3,1)')

    def test_unit_not_in_span(self):
        x = expand_in_schurq(QsymExpr.peak([2], 4))
        self.assertEqual(self.renderer.not_in_span(x),
                         'not in span of Q at degree 4; first failing equation '
                         'at K{3}\nresidual K{3}: -1')

    def test_unit_peaks(self):
        self.assertEqual(self.renderer.peaks(Permutation.from_str('316245'),
                                             IndexSet([1, 3], 6), IndexSet([3], 6)),
                         'Des={1,3} Peak={3}')

    def test_unit_insertion(self):
        text = self.renderer.insertion('rsk', rsk(Permutation.from_str('21'),
                                                  trace=True))
        self.assertEqual(text.splitlines(), ['place 2 @(1,1)', 'row-bump 2←1 @(1,1)',
                                             'place 2 @(2,1)', 'P: 1/2', 'Q: 1/2'])

    def test_unit_conjecture(self):
        text = self.renderer.conjecture([conjecture_check(4, 4)])
        self.assertEqual(text, 'n=4 symmetric=true q_positive=true 7*Q(4) + 8*Q(3,1)')

    def test_unit_verification_summary(self):
        text = self.renderer.verification('shuffle', 3, [
            CheckResult('a', True), CheckResult('b', False, 'boom'),
            CheckResult('c', True, 'note', informational=True)])
        self.assertEqual(text.splitlines(), ['PASS a', 'FAIL b: boom', 'INFO c: note',
                                             'shuffle: 1 passed, 1 failed (max n=3)'])

    def test_unit_witness(self):
        patterns = PatternSet.from_str('132')
        self.assertEqual(self.renderer.witness(patterns, 5, 8), 'n=5')
        self.assertEqual(self.renderer.witness(patterns, None, 8), 'none up to n=8')


class TestUnitRendererLatex(unittest.TestCase):

    def setUp(self):
        self.renderer = RendererLatex()

    def test_unit_peak_basis(self):
        self.assertEqual(self.renderer.qsym(R3), '4K_{\\emptyset}+2K_{\\{2\\}}')

    def test_unit_monomial_basis(self):
        e = QsymExpr.monomial((2, 1)) - QsymExpr.monomial((1, 2), 3)
        self.assertEqual(self.renderer.qsym(e), '-3M_{(1,2)}+M_{(2,1)}')

    def test_unit_expansion(self):
        self.assertEqual(self.renderer.expansion(X4), '7Q_{(4)}+8Q_{(3,1)}')
        x = SchurQExpansion.from_pairs(3, [((3,), Fraction(1, 2)), ((2, 1), -1)])
        self.assertEqual(self.renderer.expansion(x), '\\frac{1}{2}Q_{(3)}-Q_{(2,1)}')

    def test_unit_zero(self):
        self.assertEqual(self.renderer.qsym(QsymExpr.zero(3)), '0')

    def test_unit_plain_text_for_the_rest(self):
        self.assertEqual(self.renderer.witness(PatternSet.from_str('132'), 5, 8), 'n=5')


class TestUnitRendererJson(unittest.TestCase):

    def setUp(self):
        self.renderer = RendererJson()

    def test_unit_peaks(self):
        data = json.loads(self.renderer.peaks(Permutation.from_str('316245'),
                                              IndexSet([1, 3], 6), IndexSet([3], 6)))
        self.assertEqual(data, {'permutation': [3, 1, 6, 2, 4, 5],
                                'descents': [1, 3], 'peaks': [3]})

    def test_unit_conjecture(self):
        data = json.loads(self.renderer.conjecture([conjecture_check(4, 4)]))
        self.assertEqual(len(data), 1)
        self.assertEqual(data[0]['expansion']['terms'],
                         [{'index': [4], 'coeff': '7'}, {'index': [3, 1], 'coeff': '8'}])
        self.assertTrue(data[0]['q_positive'])

    def test_unit_verification(self):
        data = json.loads(self.renderer.verification('table1', 3, [
            CheckResult('a', True), CheckResult('b', False, 'boom')]))
        self.assertFalse(data['passed'])
        self.assertEqual([c['label'] for c in data['checks']], ['a', 'b'])


if __name__ == '__main__':
    unittest.main()
