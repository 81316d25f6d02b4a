"""Pattern-avoiding peak functions R_n(Π) = Σ K_{Peak(π)} over Av_n(Π),
computed by enumeration and by closed form."""

import logging
import re
import time
from collections import Counter
from functools import lru_cache
from typing import Callable, NamedTuple, Optional, Union

from apps.pattpeak.combinat.exceptions import DegreeMismatchError
from apps.pattpeak.combinat.exceptions import UnknownClosedFormError
from apps.pattpeak.combinat.permutations import PatternSet
from apps.pattpeak.combinat.permutations import Permutation
from apps.pattpeak.combinat.permutations import descent_positions
from apps.pattpeak.combinat.permutations import iter_av_entries
from apps.pattpeak.combinat.permutations import peak_histogram
from apps.pattpeak.combinat.qsym import BASIS_F
from apps.pattpeak.combinat.qsym import BASIS_K
from apps.pattpeak.combinat.qsym import Composition
from apps.pattpeak.combinat.qsym import QsymExpr
from apps.pattpeak.combinat.qsym import is_symmetric
from apps.pattpeak.combinat.schurq import NotInSpan
from apps.pattpeak.combinat.schurq import SchurQExpansion
from apps.pattpeak.combinat.schurq import expand_in_schurq
from apps.pattpeak.combinat.schurq import is_schurq_positive
from apps.pattpeak.combinat.tableaux import binomial
from apps.pattpeak.combinat.tableaux import enumerate_ssht
from apps.pattpeak.combinat.tableaux import strict_partitions
from apps.pattpeak.combinat.utils import find_subclass
from apps.pattpeak.combinat.utils import subclass_names


LOGGER = logging.getLogger(__name__)


def r_n_from_histogram(histogram: Counter, n: int) -> QsymExpr:
    """One K term per distinct peak set, weighted by its multiplicity."""
    return QsymExpr(n, BASIS_K, dict(histogram))


@lru_cache(maxsize=512)
def r_n(patterns: PatternSet, n: int) -> QsymExpr:
    if n < 0:
        raise DegreeMismatchError(f"Negative degree {n}")
    return r_n_from_histogram(peak_histogram(n, patterns), n)


def pattern_fundamental(patterns: PatternSet, n: int) -> QsymExpr:
    """Σ F_{Des(π)} over Av_n(Π)."""
    counts = Counter(descent_positions(e) for e in iter_av_entries(n, patterns))
    return QsymExpr(n, BASIS_F, {Composition.from_set(d, n): c
                                 for d, c in counts.items()})


def iota(k: int) -> Permutation:
    return Permutation.identity(k)


def delta(j: int) -> Permutation:
    return Permutation.decreasing(j)


# -- closed forms -------------------------------------------------------------

def _two_row_shapes(n: int):
    for k in range(n // 2 + 1):
        if k == 0:
            yield k, (n,)
        elif n - k > k:
            yield k, (n - k, k)


def _single_row(n: int, coeff: int) -> SchurQExpansion:
    return SchurQExpansion.from_pairs(n, [((n,), coeff)])


class ClosedForm(object):
    """A closed-form Schur Q expansion of R_n(Π) for the listed pattern
    sets. Subclasses are looked up by name through `closed_form`."""

    ROW = None
    MIN_N = 3
    PATTERN_SETS = ()

    def __init__(self, n: int) -> None:
        if n < self.MIN_N:
            raise DegreeMismatchError(
                f"{type(self).__name__} holds for n >= {self.MIN_N}, got {n}")
        self._n = n

    @property
    def n(self) -> int:
        return self._n

    @classmethod
    def pattern_sets(cls) -> list:
        return [PatternSet.from_str(text) for text in cls.PATTERN_SETS]

    def expansion(self) -> SchurQExpansion:
        raise NotImplementedError(f"{type(self).__name__} has no expansion")

    def __str__(self):
        return f"<{type(self).__name__} n={self._n} {self.expansion()}>"


class ClosedFormRow1(ClosedForm):
    """Σ_λ 2^{n-ℓ(λ)} |SShT(λ)| Q_λ."""

    ROW = 1
    PATTERN_SETS = ('{}',)

    def expansion(self):
        n = self._n
        return SchurQExpansion(n, {
            shape: 2 ** (n - shape.length) * len(enumerate_ssht(shape))
            for shape in strict_partitions(n)})


class ClosedFormRow2(ClosedForm):
    """Σ_k (C(n,k+1) - C(n,k-1)) Q_{(n-k,k)}."""

    ROW = 2
    PATTERN_SETS = ('123', '213', '312', '321')

    def expansion(self):
        n = self._n
        return SchurQExpansion.from_pairs(n, [
            (shape, binomial(n, k + 1) - binomial(n, k - 1))
            for k, shape in _two_row_shapes(n)])


class ClosedFormRow3(ClosedForm):
    """Σ_k (n-2k) Q_{(n-k,k)}."""

    ROW = 3
    PATTERN_SETS = ('213,132', '231,312', '123,132',
                    '132,312', '213,231', '231,321')

    def expansion(self):
        n = self._n
        return SchurQExpansion.from_pairs(n, [
            (shape, n - 2 * k) for k, shape in _two_row_shapes(n)])


class ClosedFormRow4(ClosedForm):
    ROW = 4
    PATTERN_SETS = ('132,231',)

    def expansion(self):
        return _single_row(self._n, 2 ** (self._n - 1))


class ClosedFormRow5(ClosedForm):
    """2Q_(n) + Q_(n-1,1)."""

    ROW = 5
    PATTERN_SETS = ('123,132,312', '123,213,231', '132,312,321',
                    '132,213,321', '132,213,312', '123,231,312',
                    '213,231,321', '213,231,312')
    # The members that are shuffles of a size-2 pattern with 1
    SHUFFLE_SETS = ('123,132,312', '123,213,231',
                    '132,312,321', '213,231,321')

    def expansion(self):
        n = self._n
        return SchurQExpansion.from_pairs(n, [((n,), 2), ((n - 1, 1), 1)])


class ClosedFormRow6(ClosedForm):
    ROW = 6
    PATTERN_SETS = ('123,132,231', '132,213,231',
                    '132,231,312', '132,231,321')

    def expansion(self):
        return _single_row(self._n, self._n)


class ClosedFormRow7(ClosedForm):
    ROW = 7
    PATTERN_SETS = ('123,132,213,231', '123,132,231,312',
                    '132,213,231,312', '132,213,231,321',
                    '132,231,312,321')

    def expansion(self):
        return _single_row(self._n, 2)


class ClosedFormRow8(ClosedForm):
    ROW = 8
    PATTERN_SETS = ('123,132,213,231,312', '132,213,231,312,321')

    def expansion(self):
        return _single_row(self._n, 1)


class ClosedFormIncludeDelta(ClosedForm):
    """R_n(132, 312, δ_j), with coefficient min(n-2k, j-1-k) on Q_{(n-k,k)}."""

    MIN_N = 1

    def __init__(self, n: int, j: int = 3) -> None:
        super().__init__(n)
        if j < 2:
            raise DegreeMismatchError(f"δ_j needs j >= 2, got {j}")
        self._j = j

    @property
    def j(self) -> int:
        return self._j

    def pattern_sets(self) -> list:
        return [include_delta_patterns(self._j)]

    def expansion(self):
        return include_delta_formula(self._j, self._n)


TABLE1 = (ClosedFormRow1, ClosedFormRow2, ClosedFormRow3, ClosedFormRow4,
          ClosedFormRow5, ClosedFormRow6, ClosedFormRow7, ClosedFormRow8)

CLOSED_FORM_ALIASES = {
    'r321': 'row2',
    'r132_312': 'row3',
    'shuffle_case': 'row5',
}

_INCLUDE_DELTA_RE = re.compile(r'^include_?delta\((\d+)\)$', re.IGNORECASE)
_CLOSED_FORM_CACHE = {}


def find_closed_form(identifier: Union[str, int], n: int) -> ClosedForm:
    """Resolve "row1".."row8", 1..8, an alias, or "include_delta(j)"."""
    text = str(identifier).strip()
    if text.isdigit():
        text = f"row{text}"
    text = CLOSED_FORM_ALIASES.get(text, text)

    match = _INCLUDE_DELTA_RE.match(text)
    if match:
        return ClosedFormIncludeDelta(n, int(match.group(1)))

    klass = find_subclass(ClosedForm, text, cache=_CLOSED_FORM_CACHE)
    if klass is None or klass is ClosedFormIncludeDelta:
        known = ['include_delta(j)' if name == 'include_delta' else name
                 for name in subclass_names(ClosedForm)]
        raise UnknownClosedFormError(f"Unknown closed form '{identifier}', "
                                     f"expected one of {', '.join(known)}")
    return klass(n)


def closed_form(identifier: Union[str, int], n: int) -> SchurQExpansion:
    return find_closed_form(identifier, n).expansion()


def table1_row_of(patterns: PatternSet) -> Optional[type]:
    for row in TABLE1:
        if patterns in row.pattern_sets():
            return row
    return None


# -- avoiding 132, 312 and δ_j ---------------------------------------------

def include_delta_patterns(j: int) -> PatternSet:
    return PatternSet([Permutation.from_str('132'), Permutation.from_str('312'),
                       delta(j)])


def include_delta_formula(j: int, n: int) -> SchurQExpansion:
    """Σ_k max(0, min(n-2k, j-1-k)) Q_{(n-k,k)} over strict two-row shapes.

    The descending arm of each V-shaped preimage holds every a label and
    c_1..c_m, and is capped at j-1 entries.
    """
    if j < 2 or n < 1:
        raise DegreeMismatchError(f"Need j >= 2 and n >= 1, got j={j}, n={n}")
    return SchurQExpansion.from_pairs(n, [
        (shape, min(n - 2 * k, j - 1 - k))
        for k, shape in _two_row_shapes(n) if min(n - 2 * k, j - 1 - k) > 0])


def include_delta_printed(j: int, n: int) -> SchurQExpansion:
    """Σ_{k=0}^{j-2} (j-1-k) Q_{(n-k,k)}, keeping only strict shapes."""
    if j < 2 or n < 1:
        raise DegreeMismatchError(f"Need j >= 2 and n >= 1, got j={j}, n={n}")
    return SchurQExpansion.from_pairs(n, [
        (shape, j - 1 - k) for k, shape in _two_row_shapes(n) if k <= j - 2])


def include_delta_divergence(j: int, n: int) -> list:
    """Shapes whose coefficient differs between the printed and clipped forms."""
    printed = include_delta_printed(j, n)
    clipped = include_delta_formula(j, n)
    shapes = set(printed.terms) | set(clipped.terms)
    return sorted((s for s in shapes
                   if printed.coefficient(s) != clipped.coefficient(s)),
                  key=lambda s: s.display_key)


# -- shuffles -----------------------------------------------------------------

def shuffle_formula_rhs(a: PatternSet, b: PatternSet, n: int) -> QsymExpr:
    """R_n(b) + Σ_{k<n} R_k(a) [K_{∅,1} R_{n-k-1}(b) - R_{n-k}(b)]."""
    k_one = QsymExpr.peak((), 1)
    total = r_n(b, n)
    for k in range(n):
        bracket = k_one * r_n(b, n - k - 1) - r_n(b, n - k)
        total = total + r_n(a, k) * bracket
    return total


# -- conjecture tooling -------------------------------------------------------

class ConjectureReport(object):
    def __init__(self, k: int, n: int, symmetric: bool,
                 expansion: Union[SchurQExpansion, NotInSpan],
                 elapsed_ms: float) -> None:
        self._k = k
        self._n = n
        self._symmetric = symmetric
        self._expansion = expansion
        self._elapsed_ms = elapsed_ms

    @property
    def k(self) -> int:
        return self._k

    @property
    def n(self) -> int:
        return self._n

    @property
    def symmetric(self) -> bool:
        return self._symmetric

    @property
    def q_positive(self) -> bool:
        return isinstance(self._expansion, SchurQExpansion) and \
            is_schurq_positive(self._expansion)

    @property
    def expansion(self) -> Union[SchurQExpansion, NotInSpan]:
        return self._expansion

    @property
    def elapsed_ms(self) -> float:
        return self._elapsed_ms

    def __str__(self):
        return (f"<{type(self).__name__} k={self._k} n={self._n} "
                f"symmetric={self._symmetric} q_positive={self.q_positive} "
                f"expansion={self._expansion}>")


def conjecture_check(k: int, n: int, expr: Optional[QsymExpr] = None) -> ConjectureReport:
    """Test R_n(ι_k) for symmetry and Schur Q-positivity. A precomputed
    R_n(ι_k) may be passed in as `expr`."""
    if k < 2:
        raise DegreeMismatchError(f"ι_k needs k >= 2, got {k}")
    start = time.perf_counter()
    if expr is None:
        expr = r_n(PatternSet([iota(k)]), n)
    symmetric = is_symmetric(expr)
    expansion = expand_in_schurq(expr)
    elapsed = (time.perf_counter() - start) * 1000
    LOGGER.debug(f"Conjecture check k={k} n={n} took {elapsed:.1f}ms")
    return ConjectureReport(k, n, symmetric, expansion, elapsed)


def find_nonsymmetric_witness(patterns: PatternSet, n_max: int,
                              compute: Callable = r_n) -> Optional[int]:
    """Smallest n <= n_max with R_n(patterns) not symmetric. `compute(patterns, n)`
    supplies R_n, e.g. from a histogram cache."""
    for n in range(1, n_max + 1):
        if not is_symmetric(compute(patterns, n)):
            LOGGER.debug(f"R_{n}({patterns}) is not symmetric")
            return n
    return None


# -- reference data -----------------------------------------------------------

def _table(rows: dict) -> dict:
    return {n: SchurQExpansion.from_pairs(n, pairs) for n, pairs in rows.items()}


APPENDIX_IOTA4 = _table({
    1: [((1,), 1)],
    2: [((2,), 2)],
    3: [((3,), 4), ((2, 1), 2)],
    4: [((4,), 7), ((3, 1), 8)],
    5: [((5,), 11), ((4, 1), 20), ((3, 2), 16)],
    6: [((6,), 16), ((5, 1), 40), ((4, 2), 61), ((3, 2, 1), 15)],
    7: [((7,), 22), ((6, 1), 70), ((5, 2), 155), ((4, 3), 91),
        ((4, 2, 1), 77)],
    8: [((8,), 29), ((7, 1), 112), ((6, 2), 323), ((5, 3), 344),
        ((5, 2, 1), 232), ((4, 3, 1), 168)],
    9: [((9,), 37), ((8, 1), 168), ((7, 2), 595), ((6, 3), 891),
        ((5, 4), 456), ((6, 2, 1), 555), ((5, 3, 1), 744),
        ((4, 3, 2), 168)],
})

APPENDIX_IOTA5 = _table({
    1: [((1,), 1)],
    2: [((2,), 2)],
    3: [((3,), 4), ((2, 1), 2)],
    4: [((4,), 8), ((3, 1), 8)],
    5: [((5,), 15), ((4, 1), 24), ((3, 2), 16)],
    6: [((6,), 26), ((5, 1), 59), ((4, 2), 80), ((3, 2, 1), 16)],
    7: [((7,), 42), ((6, 1), 125), ((5, 2), 259), ((4, 3), 160),
        ((4, 2, 1), 112)],
    8: [((8,), 64), ((7, 1), 237), ((6, 2), 664), ((5, 3), 769),
        ((5, 2, 1), 448), ((4, 3, 1), 384)],
    9: [((9,), 93), ((8, 1), 413), ((7, 2), 1461), ((6, 3), 2441),
        ((5, 4), 1329), ((6, 2, 1), 1344), ((5, 3, 1), 2217),
        ((4, 3, 2), 768)],
})

APPENDIX = {4: APPENDIX_IOTA4, 5: APPENDIX_IOTA5}


class AppendixErratum(NamedTuple):
    k: int
    n: int
    printed: SchurQExpansion
    corrected: SchurQExpansion
    note: str


APPENDIX_ERRATA = (
    AppendixErratum(
        k=5, n=3,
        printed=SchurQExpansion.from_pairs(3, [((3,), 4), ((2, 1), 1)]),
        corrected=APPENDIX_IOTA5[3],
        note='avoiding 12345 is vacuous at n=3, so R_3(12345) = R_3(∅)'),
)
