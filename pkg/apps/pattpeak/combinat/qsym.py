"""Homogeneous quasisymmetric functions in the monomial (M), fundamental
(F) and peak (K) bases, with exact integer coefficients."""

import logging
from collections import Counter
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional

from sympy import Poly
from sympy import symbols
from sympy.utilities.iterables import multiset_permutations

from apps.pattpeak.combinat.exceptions import BasisMismatchError
from apps.pattpeak.combinat.exceptions import DegreeMismatchError
from apps.pattpeak.combinat.exceptions import InvalidIndexSetError
from apps.pattpeak.combinat.exceptions import InvalidShapeError
from apps.pattpeak.combinat.permutations import IndexSet
from apps.pattpeak.combinat.permutations import Permutation
from apps.pattpeak.combinat.permutations import peak_positions
from apps.pattpeak.combinat.permutations import shuffle_perms


LOGGER = logging.getLogger(__name__)

BASIS_M = 'M'
BASIS_F = 'F'
BASIS_K = 'K'
BASES = (BASIS_M, BASIS_F, BASIS_K)


class Composition(object):
    """An ordered sequence of positive parts."""

    def __init__(self, parts: Iterable[int] = ()) -> None:
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise InvalidShapeError(f"Parts of composition {parts} must be positive")
        self._parts = parts

    @classmethod
    def from_set(cls, s: Iterable[int], n: int) -> 'Composition':
        """Inverse of comp_set: the composition of n with the given partial sums."""
        cuts = [0] + sorted(s) + [n]
        if n == 0:
            return cls(())
        return cls(b - a for a, b in zip(cuts, cuts[1:]))

    @property
    def parts(self) -> tuple:
        return self._parts

    @property
    def weight(self) -> int:
        return sum(self._parts)

    @property
    def sort_key(self) -> tuple:
        return self._parts

    def reversed(self) -> 'Composition':
        return Composition(self._parts[::-1])

    def __len__(self):
        return len(self._parts)

    def __iter__(self):
        return iter(self._parts)

    def __eq__(self, other):
        if not isinstance(other, Composition):
            return NotImplemented
        return self._parts == other._parts

    def __lt__(self, other):
        return self._parts < other._parts

    def __hash__(self):
        return hash(('composition', self._parts))

    def __str__(self):
        return '(' + ','.join(str(p) for p in self._parts) + ')'

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"


def comp_set(c: Composition) -> IndexSet:
    """Partial sums of c, excluding the total."""
    sums, total = [], 0
    for part in c.parts[:-1]:
        total += part
        sums.append(total)
    return IndexSet(sums, c.weight)


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of n, in lexicographic order."""
    def gen(rest):
        if rest == 0:
            yield ()
            return
        for first in range(1, rest + 1):
            for tail in gen(rest - first):
                yield (first,) + tail

    for parts in gen(n):
        yield Composition(parts)


def _coerce_index(basis: str, index, degree: int):
    if basis == BASIS_K:
        if not isinstance(index, IndexSet):
            index = IndexSet(index, degree)
        if index.degree != degree:
            raise DegreeMismatchError(f"{index} has degree {index.degree}, not {degree}")
        if not index.is_peak_set:
            raise InvalidIndexSetError(f"{index} is not a peak set")
        return index

    if not isinstance(index, Composition):
        index = Composition(index)
    if index.weight != degree:
        raise DegreeMismatchError(f"{index} has weight {index.weight}, not {degree}")
    return index


def peak_label(s: Iterable[int]) -> str:
    return "K{" + ",".join(str(e) for e in s) + "}"


def _index_text(basis: str, index) -> str:
    if basis == BASIS_K:
        return peak_label(index)
    return f"{basis}{index}"


def linear_combination_text(pairs: Iterable[tuple]) -> str:
    """Render (coefficient, label) pairs as "7*Q(4) + 8*Q(3,1)"."""
    out = []
    for coeff, label in pairs:
        if not out:
            out.append(f"{coeff}*{label}")
        elif coeff < 0:
            out.append(f" - {-coeff}*{label}")
        else:
            out.append(f" + {coeff}*{label}")
    return ''.join(out) or '0'


class QsymExpr(object):
    """A homogeneous linear combination over one of the M, F or K bases."""

    def __init__(self, degree: int, basis: str, terms: Optional[dict] = None) -> None:
        if basis not in BASES:
            raise BasisMismatchError(f"Unknown basis '{basis}'")
        if degree < 0:
            raise DegreeMismatchError(f"Negative degree {degree}")

        merged = Counter()
        for index, coeff in (terms or {}).items():
            merged[_coerce_index(basis, index, degree)] += int(coeff)

        self._degree = degree
        self._basis = basis
        self._terms = {index: merged[index]
                       for index in sorted(merged, key=lambda i: i.sort_key)
                       if merged[index] != 0}

    @classmethod
    def monomial(cls, parts: Iterable[int], coeff: int = 1) -> 'QsymExpr':
        c = Composition(parts)
        return cls(c.weight, BASIS_M, {c: coeff})

    @classmethod
    def fundamental(cls, parts: Iterable[int], coeff: int = 1) -> 'QsymExpr':
        c = Composition(parts)
        return cls(c.weight, BASIS_F, {c: coeff})

    @classmethod
    def peak(cls, elements: Iterable[int], degree: int, coeff: int = 1) -> 'QsymExpr':
        return cls(degree, BASIS_K, {IndexSet(elements, degree, peak=True): coeff})

    @classmethod
    def zero(cls, degree: int, basis: str = BASIS_K) -> 'QsymExpr':
        return cls(degree, basis, {})

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def basis(self) -> str:
        return self._basis

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, index) -> int:
        return self._terms.get(_coerce_index(self._basis, index, self._degree), 0)

    def _check_compatible(self, other: 'QsymExpr') -> None:
        if self._basis != other._basis:
            raise BasisMismatchError(
                f"Cannot combine {self._basis} and {other._basis} expressions")
        if self._degree != other._degree:
            raise DegreeMismatchError(
                f"Cannot combine degrees {self._degree} and {other._degree}")

    def __add__(self, other):
        if not isinstance(other, QsymExpr):
            return NotImplemented
        self._check_compatible(other)
        terms = Counter(self._terms)
        terms.update(other._terms)
        return QsymExpr(self._degree, self._basis, terms)

    def __neg__(self):
        return QsymExpr(self._degree, self._basis,
                        {i: -c for i, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QsymExpr):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QsymExpr(self._degree, self._basis,
                            {i: c * other for i, c in self._terms.items()})
        if isinstance(other, QsymExpr):
            if self._basis == other._basis == BASIS_K:
                return peak_product(self, other)
            if self._basis == other._basis == BASIS_M:
                return quasi_shuffle_product(self, other)
            raise BasisMismatchError(
                f"No product for {self._basis} and {other._basis} expressions")
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, QsymExpr):
            return NotImplemented
        return (self._degree, self._basis, self._terms) == \
            (other._degree, other._basis, other._terms)

    def __hash__(self):
        return hash((self._degree, self._basis, tuple(self._terms.items())))

    def __str__(self):
        return linear_combination_text(
            (c, _index_text(self._basis, i)) for i, c in self._terms.items())

    def __repr__(self):
        return f"<{type(self).__name__} n={self._degree} basis={self._basis} {self}>"


def _require_basis(e: QsymExpr, basis: str) -> None:
    if e.basis != basis:
        raise BasisMismatchError(f"Expected a {basis} expression, got {e.basis}")


# -- basis changes ------------------------------------------------------------

@lru_cache(maxsize=None)
def _k_support(elements: tuple, n: int) -> tuple:
    """Compositions β of n with S ⊆ set(β) △ (set(β)+1)."""
    if n == 0:
        return ((),)
    required = set(elements)
    support = []
    for c in compositions(n):
        cuts = set(comp_set(c))
        sym = cuts ^ {s + 1 for s in cuts}
        if required <= sym:
            support.append(c.parts)
    return tuple(support)


def k_to_f(e: QsymExpr) -> QsymExpr:
    _require_basis(e, BASIS_K)
    n = e.degree
    terms = Counter()
    for s, coeff in e.terms.items():
        # K_{∅,0} is the unit
        scale = 1 if n == 0 else 2 ** (len(s) + 1)
        for parts in _k_support(s.elements, n):
            terms[Composition(parts)] += scale * coeff
    return QsymExpr(n, BASIS_F, terms)


@lru_cache(maxsize=None)
def _refinements(parts: tuple) -> tuple:
    n = sum(parts)
    cuts = set(comp_set(Composition(parts)))
    free = [i for i in range(1, n) if i not in cuts]
    result = []
    for size in range(len(free) + 1):
        for extra in combinations(free, size):
            result.append(Composition.from_set(cuts | set(extra), n).parts)
    return tuple(result)


def f_to_m(e: QsymExpr) -> QsymExpr:
    _require_basis(e, BASIS_F)
    terms = Counter()
    for alpha, coeff in e.terms.items():
        for parts in _refinements(alpha.parts):
            terms[Composition(parts)] += coeff
    return QsymExpr(e.degree, BASIS_M, terms)


def to_m(e: QsymExpr) -> QsymExpr:
    if e.basis == BASIS_K:
        e = k_to_f(e)
    if e.basis == BASIS_F:
        e = f_to_m(e)
    return e


def is_symmetric(e: QsymExpr) -> bool:
    """True iff the M-coefficients are constant on rearrangement classes."""
    m = to_m(e)
    terms = m.terms
    for alpha, coeff in terms.items():
        for parts in multiset_permutations(list(alpha.parts)):
            if terms.get(Composition(parts), 0) != coeff:
                LOGGER.debug(f"Not symmetric: M{alpha} has {coeff}, "
                             f"M{Composition(parts)} has "
                             f"{terms.get(Composition(parts), 0)}")
                return False
    return True


def reverse_m(e: QsymExpr) -> QsymExpr:
    _require_basis(e, BASIS_M)
    return QsymExpr(e.degree, BASIS_M,
                    {alpha.reversed(): c for alpha, c in e.terms.items()})


# -- products -----------------------------------------------------------------

def representative_perm(s: IndexSet, n: Optional[int] = None) -> Permutation:
    """ι_n with positions s, s+1 swapped for every s in S, so Des = Peak = S."""
    n = s.degree if n is None else n
    if not s.is_peak_set or (s.elements and s.elements[-1] > n - 1):
        raise InvalidIndexSetError(f"{s} is not a peak set of degree {n}")
    entries = list(range(1, n + 1))
    for p in s:
        entries[p - 1], entries[p] = entries[p], entries[p - 1]
    return Permutation._trusted(tuple(entries))


@lru_cache(maxsize=4096)
def _shuffle_peaks(left: tuple, right: tuple) -> tuple:
    counts = Counter(peak_positions(rho.entries)
                     for rho in shuffle_perms(Permutation._trusted(left),
                                              Permutation._trusted(right)))
    return tuple(sorted(counts.items()))


def peak_product(a: QsymExpr, b: QsymExpr) -> QsymExpr:
    """K_{S1,n1} K_{S2,n2} = Σ K_{Peak(ρ)} over ρ in π ⧢ σ, for any π, σ
    with Peak(π) = S1 and Peak(σ) = S2."""
    _require_basis(a, BASIS_K)
    _require_basis(b, BASIS_K)
    n = a.degree + b.degree
    terms = Counter()
    for s1, c1 in a.terms.items():
        left = representative_perm(s1, a.degree).entries
        for s2, c2 in b.terms.items():
            right = representative_perm(s2, b.degree).entries
            for peaks, count in _shuffle_peaks(left, right):
                terms[IndexSet(peaks, n)] += c1 * c2 * count
    return QsymExpr(n, BASIS_K, terms)


@lru_cache(maxsize=None)
def _quasi_shuffle(alpha: tuple, beta: tuple) -> tuple:
    if not alpha:
        return ((beta, 1),)
    if not beta:
        return ((alpha, 1),)
    terms = Counter()
    for head, rest_a, rest_b in ((alpha[0], alpha[1:], beta),
                                 (beta[0], alpha, beta[1:]),
                                 (alpha[0] + beta[0], alpha[1:], beta[1:])):
        for tail, c in _quasi_shuffle(rest_a, rest_b):
            terms[(head,) + tail] += c
    return tuple(terms.items())


def quasi_shuffle_product(a: QsymExpr, b: QsymExpr) -> QsymExpr:
    _require_basis(a, BASIS_M)
    _require_basis(b, BASIS_M)
    terms = Counter()
    for alpha, c1 in a.terms.items():
        for beta, c2 in b.terms.items():
            for parts, c in _quasi_shuffle(alpha.parts, beta.parts):
                terms[Composition(parts)] += c1 * c2 * c
    return QsymExpr(a.degree + b.degree, BASIS_M, terms)


# -- evaluation ---------------------------------------------------------------

def specialize(e: QsymExpr, m: int) -> Poly:
    """Restrict e to the variables x1..xm."""
    if m < 1:
        raise ValueError(f"Need at least one variable, got {m}")
    gens = symbols(f"x1:{m + 1}")
    exponents = Counter()
    for alpha, coeff in to_m(e).terms.items():
        k = len(alpha)
        for chosen in combinations(range(m), k):
            vector = [0] * m
            for position, part in zip(chosen, alpha.parts):
                vector[position] = part
            exponents[tuple(vector)] += coeff

    rep = {exp: c for exp, c in exponents.items() if c}
    if not rep:
        return Poly(0, *gens, domain='ZZ')
    return Poly.from_dict(rep, *gens, domain='ZZ')
