"""Schur Q-functions in the peak basis and expansion into them."""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from apps.pattpeak.combinat.exceptions import BasisMismatchError
from apps.pattpeak.combinat.exceptions import DegreeMismatchError
from apps.pattpeak.combinat.permutations import IndexSet
from apps.pattpeak.combinat.qsym import BASIS_K
from apps.pattpeak.combinat.qsym import QsymExpr
from apps.pattpeak.combinat.qsym import linear_combination_text
from apps.pattpeak.combinat.qsym import peak_label
from apps.pattpeak.combinat.tableaux import StrictPartition
from apps.pattpeak.combinat.tableaux import enumerate_ssht
from apps.pattpeak.combinat.tableaux import strict_partitions
from apps.pattpeak.combinat.tableaux import tableau_peaks


LOGGER = logging.getLogger(__name__)


def _strict(shape) -> StrictPartition:
    if isinstance(shape, StrictPartition):
        return shape
    if not isinstance(shape, (tuple, list)):
        shape = shape.parts
    return StrictPartition(shape)


class SchurQExpansion(object):
    """Σ c_λ Q_λ over strict partitions λ of a fixed degree, with rational
    coefficients."""

    def __init__(self, degree: int, terms: Optional[dict] = None) -> None:
        if degree < 0:
            raise DegreeMismatchError(f"Negative degree {degree}")
        merged = {}
        for shape, coeff in (terms or {}).items():
            shape = _strict(shape)
            if shape.weight != degree:
                raise DegreeMismatchError(
                    f"{shape} has weight {shape.weight}, not {degree}")
            merged[shape] = merged.get(shape, Fraction(0)) + Fraction(coeff)

        self._degree = degree
        self._terms = {shape: merged[shape]
                       for shape in sorted(merged, key=lambda s: s.display_key)
                       if merged[shape] != 0}

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def coefficient(self, shape) -> Fraction:
        return self._terms.get(_strict(shape), Fraction(0))

    def to_p_expansion(self) -> 'SchurQExpansion':
        """Coefficients of the same function in the Schur P basis."""
        return SchurQExpansion(self._degree, {
            shape: c * q_over_p_scalar(shape) for shape, c in self._terms.items()})

    def to_k(self) -> QsymExpr:
        """Back to the peak basis; needs integral coefficients."""
        if not self.is_integral:
            raise BasisMismatchError(f"{self} has non-integral coefficients")
        total = QsymExpr.zero(self._degree, BASIS_K)
        for shape, coeff in self._terms.items():
            total = total + schur_q(shape) * int(coeff)
        return total

    def __add__(self, other):
        if not isinstance(other, SchurQExpansion):
            return NotImplemented
        if self._degree != other._degree:
            raise DegreeMismatchError(
                f"Cannot add degrees {self._degree} and {other._degree}")
        terms = dict(self._terms)
        for shape, c in other._terms.items():
            terms[shape] = terms.get(shape, Fraction(0)) + c
        return SchurQExpansion(self._degree, terms)

    def __eq__(self, other):
        if not isinstance(other, SchurQExpansion):
            return NotImplemented
        return (self._degree, self._terms) == (other._degree, other._terms)

    def __hash__(self):
        return hash((self._degree, tuple(self._terms.items())))

    def __str__(self):
        return linear_combination_text(
            (c, f"Q{shape}") for shape, c in self._terms.items())

    def __repr__(self):
        return f"<{type(self).__name__} n={self._degree} {self}>"

    @classmethod
    def from_pairs(cls, degree: int,
                   pairs: Iterable[tuple]) -> 'SchurQExpansion':
        """Build from (parts, coefficient) pairs, e.g. [((4,), 7), ((3, 1), 8)]."""
        return cls(degree, {StrictPartition(parts): c for parts, c in pairs})


class NotInSpan(object):
    """An expression outside the span of the Schur Q-functions, with the
    first peak-set equation the best candidate combination fails."""

    def __init__(self, degree: int, witness: IndexSet, residual: dict) -> None:
        self._degree = degree
        self._witness = witness
        self._residual = dict(residual)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def witness(self) -> IndexSet:
        return self._witness

    @property
    def residual(self) -> dict:
        return dict(self._residual)

    def __eq__(self, other):
        if not isinstance(other, NotInSpan):
            return NotImplemented
        return (self._degree, self._witness, self._residual) == \
            (other._degree, other._witness, other._residual)

    def __hash__(self):
        return hash((self._degree, self._witness))

    def __str__(self):
        return (f"not in span of Q at degree {self._degree}: residual "
                f"{self._residual[self._witness]} at {peak_label(self._witness)}")

    def __repr__(self):
        return f"<{type(self).__name__} n={self._degree} witness={self._witness}>"


@lru_cache(maxsize=None)
def _schur_q_terms(parts: tuple) -> tuple:
    counts = {}
    for t in enumerate_ssht(StrictPartition(parts)):
        s = tableau_peaks(t)
        counts[s] = counts.get(s, 0) + 1
    return tuple(counts.items())


def schur_q(shape) -> QsymExpr:
    """Q_λ = Σ K_{Peak(T)} over standard shifted tableaux T of shape λ."""
    shape = _strict(shape)
    return QsymExpr(shape.weight, BASIS_K, dict(_schur_q_terms(shape.parts)))


def q_over_p_scalar(shape) -> int:
    """Q_λ = 2^ℓ(λ) P_λ."""
    return 2 ** _strict(shape).length


@lru_cache(maxsize=None)
def peak_sets(n: int) -> tuple:
    """Every peak set of degree n, ordered by size then lexicographically."""
    def gen(start):
        yield ()
        for p in range(start, n):
            for rest in gen(p + 2):
                yield (p,) + rest

    found = [IndexSet(elements, n) for elements in gen(2)]
    return tuple(sorted(found, key=lambda s: s.sort_key))


class _SchurQSystem(object):
    """The (peak sets) x (strict partitions) incidence matrix for degree n,
    with a square full-rank subsystem chosen once."""

    def __init__(self, n: int) -> None:
        self.shapes = strict_partitions(n)
        self.rows = peak_sets(n)
        row_index = {s: i for i, s in enumerate(self.rows)}

        self.matrix = [[0] * len(self.shapes) for _ in self.rows]
        for j, shape in enumerate(self.shapes):
            for s, count in schur_q(shape).terms.items():
                self.matrix[row_index[s]][j] = count

        transpose = DomainMatrix(
            [[QQ(self.matrix[i][j]) for i in range(len(self.rows))]
             for j in range(len(self.shapes))],
            (len(self.shapes), len(self.rows)), QQ)
        _, pivots = transpose.rref()
        assert len(pivots) == len(self.shapes), \
            f"Schur Q incidence matrix at degree {n} is rank deficient"
        self.pivots = tuple(pivots)
        self.square = DomainMatrix(
            [[QQ(self.matrix[i][j]) for j in range(len(self.shapes))]
             for i in self.pivots],
            (len(self.pivots), len(self.shapes)), QQ)
        LOGGER.debug(f"Schur Q system at degree {n}: {len(self.rows)} peak "
                     f"sets, {len(self.shapes)} shapes, rank {len(pivots)}")

    def solve(self, rhs: list) -> list:
        column = DomainMatrix([[QQ(rhs[i])] for i in self.pivots],
                              (len(self.pivots), 1), QQ)
        solution = self.square.lu_solve(column).to_Matrix()
        return [Fraction(int(v.p), int(v.q)) for v in solution]


@lru_cache(maxsize=None)
def _system(n: int) -> _SchurQSystem:
    return _SchurQSystem(n)


def expand_in_schurq(e: QsymExpr) -> Union[SchurQExpansion, NotInSpan]:
    if e.basis != BASIS_K:
        raise BasisMismatchError(f"Expected a K expression, got {e.basis}")

    system = _system(e.degree)
    rhs = [e.terms.get(s, 0) for s in system.rows]
    coeffs = system.solve(rhs)

    residual = {}
    for i, s in enumerate(system.rows):
        value = rhs[i] - sum(a * c for a, c in zip(system.matrix[i], coeffs))
        if value != 0:
            residual[s] = value
    if residual:
        witness = next(iter(residual))
        LOGGER.debug(f"{e} is not in the Q span; first violation at {witness}")
        return NotInSpan(e.degree, witness, residual)

    return SchurQExpansion(e.degree, dict(zip(system.shapes, coeffs)))


def is_schurq_positive(x: SchurQExpansion) -> bool:
    return all(c >= 0 for c in x.terms.values())
