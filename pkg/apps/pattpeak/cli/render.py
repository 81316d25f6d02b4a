"""Emitters for the text, json and latex output formats, and the pydantic
models that define the json wire format."""

import json
import logging
from fractions import Fraction
from typing import List, Literal, Optional, Union

from pydantic import BaseModel

from apps.pattpeak.combinat.permutations import IndexSet
from apps.pattpeak.combinat.permutations import PatternSet
from apps.pattpeak.combinat.permutations import Permutation
from apps.pattpeak.combinat.qsym import BASIS_K
from apps.pattpeak.combinat.qsym import QsymExpr
from apps.pattpeak.combinat.qsym import peak_label
from apps.pattpeak.combinat.schurq import NotInSpan
from apps.pattpeak.combinat.schurq import SchurQExpansion
from apps.pattpeak.combinat.tableaux import StrictPartition
from apps.pattpeak.combinat.utils import find_subclass


LOGGER = logging.getLogger(__name__)


# -- wire models --------------------------------------------------------------

class QsymTermModel(BaseModel):
    index: List[int]
    coeff: int


class QsymExprModel(BaseModel):
    degree: int
    basis: Literal['M', 'F', 'K']
    terms: List[QsymTermModel]

    @classmethod
    def from_expr(cls, e: QsymExpr) -> 'QsymExprModel':
        # K indices are peak sets; M and F indices are compositions
        return cls(degree=e.degree, basis=e.basis, terms=[
            QsymTermModel(index=list(index.elements if e.basis == BASIS_K
                                     else index.parts), coeff=c)
            for index, c in e.terms.items()])

    def to_expr(self) -> QsymExpr:
        return QsymExpr(self.degree, self.basis,
                        {tuple(t.index): t.coeff for t in self.terms})


class SchurQTermModel(BaseModel):
    index: List[int]
    coeff: str


class SchurQExpansionModel(BaseModel):
    degree: int
    basis: Literal['Q'] = 'Q'
    terms: List[SchurQTermModel]

    @classmethod
    def from_expansion(cls, x: SchurQExpansion) -> 'SchurQExpansionModel':
        return cls(degree=x.degree, terms=[
            SchurQTermModel(index=list(shape.parts), coeff=str(c))
            for shape, c in x.terms.items()])

    def to_expansion(self) -> SchurQExpansion:
        return SchurQExpansion(self.degree, {
            StrictPartition(t.index): Fraction(t.coeff) for t in self.terms})


class NotInSpanModel(BaseModel):
    degree: int
    basis: Literal['Q'] = 'Q'
    in_span: Literal[False] = False
    witness: List[int]
    residual: List[SchurQTermModel]

    @classmethod
    def from_result(cls, x: NotInSpan) -> 'NotInSpanModel':
        return cls(degree=x.degree, witness=list(x.witness.elements), residual=[
            SchurQTermModel(index=list(s.elements), coeff=str(c))
            for s, c in x.residual.items()])

    def to_result(self) -> NotInSpan:
        return NotInSpan(self.degree, IndexSet(self.witness, self.degree), {
            IndexSet(t.index, self.degree): Fraction(t.coeff)
            for t in self.residual})


class ConjectureReportModel(BaseModel):
    n: int
    symmetric: bool
    q_positive: bool
    expansion: Union[SchurQExpansionModel, NotInSpanModel]
    elapsed_ms: float


class CheckResultModel(BaseModel):
    label: str
    passed: bool
    detail: str = ''
    informational: bool = False


class VerificationReportModel(BaseModel):
    suite: str
    max_n: int
    passed: bool
    checks: List[CheckResultModel]


def expansion_model(x: Union[SchurQExpansion, NotInSpan]):
    if isinstance(x, NotInSpan):
        return NotInSpanModel.from_result(x)
    return SchurQExpansionModel.from_expansion(x)


def dump(model: BaseModel) -> str:
    return model.model_dump_json()


# -- renderers ----------------------------------------------------------------

def _verdict(flag: bool) -> str:
    return 'true' if flag else 'false'


class Renderer(object):
    """Turns computation results into the text printed on stdout."""

    __SUBCLASSES_CACHE = {}

    @classmethod
    def for_format(cls, output_format: str) -> 'Renderer':
        klass = find_subclass(cls, output_format, cache=cls.__SUBCLASSES_CACHE)
        if klass is None:
            raise ValueError(f"No renderer for format '{output_format}'")
        return klass()

    def qsym(self, e: QsymExpr) -> str:
        raise NotImplementedError

    def expansion(self, x: SchurQExpansion) -> str:
        raise NotImplementedError

    def not_in_span(self, x: NotInSpan) -> str:
        raise NotImplementedError

    def peaks(self, p: Permutation, descents: IndexSet, peaks: IndexSet) -> str:
        raise NotImplementedError

    def insertion(self, kind: str, result) -> str:
        raise NotImplementedError

    def tableau(self, t) -> str:
        raise NotImplementedError

    def permutations(self, perms) -> str:
        raise NotImplementedError

    def conjecture(self, reports: list) -> str:
        raise NotImplementedError

    def verification(self, suite: str, max_n: int, results: list) -> str:
        raise NotImplementedError

    def witness(self, patterns: PatternSet, n: Optional[int], max_n: int) -> str:
        raise NotImplementedError

    def peak_equivalence(self, a: PatternSet, b: PatternSet, max_n: int,
                         peak_eq: bool, wilf_eq: bool) -> str:
        raise NotImplementedError


class RendererText(Renderer):

    def qsym(self, e):
        return str(e)

    def expansion(self, x):
        return str(x)

    def not_in_span(self, x):
        lines = [f"not in span of Q at degree {x.degree}; first failing "
                 f"equation at {peak_label(x.witness)}"]
        lines.extend(f"residual {peak_label(s)}: {c}"
                     for s, c in x.residual.items())
        return '\n'.join(lines)

    def peaks(self, p, descents, peaks):
        return f"Des={descents} Peak={peaks}"

    def insertion(self, kind, result):
        lines = list(result.trace or ())
        lines.append(f"P: {result.insertion}")
        lines.append(f"Q: {result.recording}")
        return '\n'.join(lines)

    def tableau(self, t):
        return str(t)

    def permutations(self, perms):
        return '\n'.join(str(p) for p in sorted(perms))

    def conjecture(self, reports):
        return '\n'.join(
            f"n={r.n} symmetric={_verdict(r.symmetric)} "
            f"q_positive={_verdict(r.q_positive)} {self._any_expansion(r.expansion)}"
            for r in reports)

    def _any_expansion(self, x):
        if isinstance(x, NotInSpan):
            return str(x)
        return self.expansion(x)

    def verification(self, suite, max_n, results):
        lines = []
        for r in results:
            if r.informational:
                lines.append(f"INFO {r.label}: {r.detail}")
            elif r.passed:
                lines.append(f"PASS {r.label}")
            else:
                lines.append(f"FAIL {r.label}: {r.detail}")
        failed = sum(1 for r in results if not r.passed and not r.informational)
        passed = sum(1 for r in results if r.passed and not r.informational)
        lines.append(f"{suite}: {passed} passed, {failed} failed (max n={max_n})")
        return '\n'.join(lines)

    def witness(self, patterns, n, max_n):
        if n is None:
            return f"none up to n={max_n}"
        return f"n={n}"

    def peak_equivalence(self, a, b, max_n, peak_eq, wilf_eq):
        return f"{_verdict(peak_eq)}\nwilf-equivalent={_verdict(wilf_eq)}"


def _latex_coeff(c: Fraction, first: bool) -> str:
    sign = '-' if c < 0 else ('' if first else '+')
    c = abs(Fraction(c))
    if c == 1:
        return sign
    if c.denominator == 1:
        return f"{sign}{c.numerator}"
    return f"{sign}\\frac{{{c.numerator}}}{{{c.denominator}}}"


def _latex_sum(pairs) -> str:
    out = [_latex_coeff(c, not i) + label for i, (c, label) in enumerate(pairs)]
    return ''.join(out) or '0'


class RendererLatex(RendererText):
    """Algebraic results as LaTeX; everything else as plain text."""

    def qsym(self, e):
        def label(index):
            if e.basis == BASIS_K:
                if not index.elements:
                    return 'K_{\\emptyset}'
                return 'K_{\\{' + ','.join(str(s) for s in index) + '\\}}'
            return f"{e.basis}_{{{index}}}"

        return _latex_sum((c, label(i)) for i, c in e.terms.items())

    def expansion(self, x):
        return _latex_sum((c, f"Q_{{{shape}}}") for shape, c in x.terms.items())


class RendererJson(Renderer):

    def qsym(self, e):
        return dump(QsymExprModel.from_expr(e))

    def expansion(self, x):
        return dump(SchurQExpansionModel.from_expansion(x))

    def not_in_span(self, x):
        return dump(NotInSpanModel.from_result(x))

    def peaks(self, p, descents, peaks):
        return json.dumps({'permutation': list(p.entries),
                           'descents': list(descents.elements),
                           'peaks': list(peaks.elements)})

    def insertion(self, kind, result):
        return json.dumps({'kind': kind,
                           'insertion': str(result.insertion),
                           'recording': str(result.recording),
                           'trace': list(result.trace or ())},
                          ensure_ascii=False)

    def tableau(self, t):
        return json.dumps({'rows': [list(row) for row in t.rows]})

    def permutations(self, perms):
        return json.dumps([list(p.entries) for p in sorted(perms)])

    def conjecture(self, reports):
        return json.dumps([
            ConjectureReportModel(
                n=r.n, symmetric=r.symmetric, q_positive=r.q_positive,
                expansion=expansion_model(r.expansion),
                elapsed_ms=r.elapsed_ms).model_dump(mode='json')
            for r in reports])

    def verification(self, suite, max_n, results):
        return dump(VerificationReportModel(
            suite=suite, max_n=max_n,
            passed=all(r.passed for r in results),
            checks=[CheckResultModel(**r._asdict()) for r in results]))

    def witness(self, patterns, n, max_n):
        return json.dumps({'patterns': patterns.canonical, 'max_n': max_n,
                           'n': n})

    def peak_equivalence(self, a, b, max_n, peak_eq, wilf_eq):
        return json.dumps({'a': a.canonical, 'b': b.canonical, 'max_n': max_n,
                           'peak_equivalent': peak_eq,
                           'wilf_equivalent': wilf_eq})
