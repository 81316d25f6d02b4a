"""Permutations, index sets and pattern sets, with the statistics and
avoidance-class enumeration built on them."""

import logging
import re
from collections import Counter
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional

from apps.pattpeak.combinat.exceptions import InvalidIndexSetError
from apps.pattpeak.combinat.exceptions import InvalidPatternSetError
from apps.pattpeak.combinat.exceptions import InvalidPermutationError


LOGGER = logging.getLogger(__name__)

EMPTY_MARKERS = ('', 'ε', '()', '∅', '{}')

_BRACKETED_RE = re.compile(r'\[([^\]]*)\]')


class Permutation(object):
    """A permutation of 1..n in one-line notation."""

    def __init__(self, entries: Iterable[int] = ()) -> None:
        entries = tuple(int(e) for e in entries)
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise InvalidPermutationError(
                f"{entries} is not a rearrangement of 1..{len(entries)}")
        self._entries = entries

    @classmethod
    def _trusted(cls, entries: tuple) -> 'Permutation':
        # Enumeration hot paths already guarantee the invariant
        perm = cls.__new__(cls)
        perm._entries = entries
        return perm

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls._trusted(tuple(range(1, n + 1)))

    @classmethod
    def decreasing(cls, n: int) -> 'Permutation':
        return cls._trusted(tuple(range(n, 0, -1)))

    @property
    def entries(self) -> tuple:
        return self._entries

    @property
    def size(self) -> int:
        return len(self._entries)

    @property
    def sort_key(self) -> tuple:
        return len(self._entries), self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __getitem__(self, index):
        return self._entries[index]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._entries == other._entries

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __hash__(self):
        return hash(('perm', self._entries))

    def __str__(self):
        if not self._entries:
            return 'ε'
        if len(self._entries) <= 9:
            return ''.join(str(e) for e in self._entries)
        return ','.join(str(e) for e in self._entries)

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"

    @classmethod
    def from_str(cls, text: str) -> 'Permutation':
        """Parse "4612537", "10,3,1,2,..." or "[10,3,1,2,...]"."""
        text = text.strip()
        if text.startswith('[') and text.endswith(']'):
            text = text[1:-1].strip()
        if text in EMPTY_MARKERS:
            return cls(())

        try:
            if ',' in text:
                return cls(int(part) for part in text.split(','))
            if not text.isdigit():
                raise ValueError(text)
            return cls(int(ch) for ch in text)
        except ValueError as e:
            raise InvalidPermutationError(
                f"Cannot parse permutation '{text}'") from e


class IndexSet(object):
    """A subset of [n-1], e.g. a descent set or a peak set of degree n."""

    def __init__(self, elements: Iterable[int], degree: int,
                 peak: bool = False) -> None:
        elements = tuple(sorted({int(e) for e in elements}))
        if degree < 0:
            raise InvalidIndexSetError(f"Negative degree {degree}")
        if elements and (elements[0] < 1 or elements[-1] > degree - 1):
            raise InvalidIndexSetError(
                f"Elements {elements} are not within [{degree - 1}]")

        self._elements = elements
        self._degree = degree

        if peak and not self.is_peak_set:
            raise InvalidIndexSetError(
                f"{self} is not a peak set of degree {degree}")

    @property
    def elements(self) -> tuple:
        return self._elements

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def is_peak_set(self) -> bool:
        if 1 in self._elements:
            return False
        return all(b - a > 1 for a, b in zip(self._elements, self._elements[1:]))

    @property
    def sort_key(self) -> tuple:
        return len(self._elements), self._elements

    def peak_part(self) -> 'IndexSet':
        """Peak(S) = {s in S : s != 1, s-1 not in S}."""
        members = set(self._elements)
        return IndexSet([s for s in self._elements
                         if s != 1 and s - 1 not in members],
                        self._degree)

    def __contains__(self, item):
        return item in self._elements

    def __iter__(self):
        return iter(self._elements)

    def __len__(self):
        return len(self._elements)

    def __eq__(self, other):
        if not isinstance(other, IndexSet):
            return NotImplemented
        return (self._degree, self._elements) == (other._degree, other._elements)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __hash__(self):
        return hash(('idx', self._degree, self._elements))

    def __str__(self):
        if not self._elements:
            return '∅'
        return '{' + ','.join(str(e) for e in self._elements) + '}'

    def __repr__(self):
        return f"<{type(self).__name__} {self} n={self._degree}>"

    @classmethod
    def from_str(cls, text: str, degree: int, peak: bool = False) -> 'IndexSet':
        """Parse "{2,5}", "2,5", "{}" or "∅"."""
        text = text.strip()
        if text.startswith('{') and text.endswith('}'):
            text = text[1:-1].strip()
        if text in EMPTY_MARKERS:
            return cls((), degree, peak=peak)
        try:
            return cls([int(part) for part in text.split(',')], degree,
                       peak=peak)
        except ValueError as e:
            raise InvalidIndexSetError(f"Cannot parse index set '{text}'") from e


class PatternSet(object):
    """A finite set of nonempty permutations defining an avoidance class."""

    def __init__(self, patterns: Iterable = ()) -> None:
        perms = frozenset(p if isinstance(p, Permutation) else Permutation(p)
                          for p in patterns)
        if any(len(p) == 0 for p in perms):
            raise InvalidPatternSetError(
                'The empty permutation cannot be used as a pattern')
        self._patterns = perms

    @property
    def patterns(self) -> frozenset:
        return self._patterns

    @property
    def canonical(self) -> str:
        """Stable text encoding, used for cache keys and output."""
        if not self._patterns:
            return '{}'
        return ','.join(_pattern_literal(p) for p in self)

    def __iter__(self):
        return iter(sorted(self._patterns))

    def __len__(self):
        return len(self._patterns)

    def __contains__(self, item):
        return item in self._patterns

    def __or__(self, other: 'PatternSet') -> 'PatternSet':
        return PatternSet(self._patterns | other._patterns)

    def __eq__(self, other):
        if not isinstance(other, PatternSet):
            return NotImplemented
        return self._patterns == other._patterns

    def __hash__(self):
        return hash(('patterns', self._patterns))

    def __str__(self):
        return '{' + ','.join(str(p) for p in self) + '}'

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"

    @classmethod
    def from_str(cls, text: str) -> 'PatternSet':
        """Parse "123,132,312", "[10,3,...],[...]", "{}" or "∅".

        Short patterns are contiguous digit runs; patterns of size ten or
        more use the bracketed form.
        """
        text = text.strip()
        if text.startswith('{') and text.endswith('}'):
            text = text[1:-1].strip()
        if text in EMPTY_MARKERS:
            return cls(())

        patterns = [Permutation.from_str(m) for m in _BRACKETED_RE.findall(text)]
        rest = _BRACKETED_RE.sub('', text)
        for literal in rest.split(','):
            literal = literal.strip()
            if literal:
                patterns.append(Permutation.from_str(literal))
        return cls(patterns)


def _pattern_literal(p: Permutation) -> str:
    return str(p) if len(p) <= 9 else f"[{p}]"


# -- statistics ---------------------------------------------------------------

def descent_positions(entries: tuple) -> tuple:
    return tuple(i for i in range(1, len(entries))
                 if entries[i - 1] > entries[i])


def peak_positions(entries: tuple) -> tuple:
    # A peak s is a descent whose predecessor position is an ascent
    return tuple(i for i in range(2, len(entries))
                 if entries[i - 2] < entries[i - 1] > entries[i])


def descent_set(p: Permutation) -> IndexSet:
    return IndexSet(descent_positions(p.entries), p.size)


def peak_set(p: Permutation) -> IndexSet:
    return IndexSet(peak_positions(p.entries), p.size, peak=True)


def peak_set_of_set(s: IndexSet) -> IndexSet:
    return s.peak_part()


def valley_set(p: Permutation) -> IndexSet:
    e = p.entries
    return IndexSet([i for i in range(2, len(e))
                     if e[i - 2] > e[i - 1] < e[i]], p.size)


# -- symmetries ---------------------------------------------------------------

SYMMETRY_REVERSE = 'reverse'
SYMMETRY_COMPLEMENT = 'complement'
SYMMETRY_REVERSE_COMPLEMENT = 'reverse_complement'
SYMMETRY_INVERSE = 'inverse'


def _reverse(e: tuple) -> tuple:
    return e[::-1]


def _complement(e: tuple) -> tuple:
    n = len(e)
    return tuple(n + 1 - x for x in e)


def _reverse_complement(e: tuple) -> tuple:
    return _complement(_reverse(e))


def _inverse(e: tuple) -> tuple:
    inv = [0] * len(e)
    for i, x in enumerate(e, start=1):
        inv[x - 1] = i
    return tuple(inv)


_SYMMETRIES = {
    SYMMETRY_REVERSE: _reverse,
    SYMMETRY_COMPLEMENT: _complement,
    SYMMETRY_REVERSE_COMPLEMENT: _reverse_complement,
    SYMMETRY_INVERSE: _inverse,
}


def apply_symmetry(p: Permutation, which: str) -> Permutation:
    try:
        transform = _SYMMETRIES[which]
    except KeyError:
        raise ValueError(f"Unknown symmetry '{which}'; must be one of "
                         f"{', '.join(_SYMMETRIES)}") from None
    return Permutation._trusted(transform(p.entries))


def pattern_set_symmetry(patterns: PatternSet, which: str) -> PatternSet:
    return PatternSet(apply_symmetry(p, which) for p in patterns)


# -- pattern containment ------------------------------------------------------

@lru_cache(maxsize=None)
def _search_plan(t: tuple) -> tuple:
    """For every pattern index j, the earlier indices whose values are the
    nearest below and nearest above t[j]; they bound the value window of
    the j-th match."""
    plan = []
    for j, v in enumerate(t):
        lower = [i for i in range(j) if t[i] < v]
        upper = [i for i in range(j) if t[i] > v]
        lo = max(lower, key=lambda i: t[i]) if lower else None
        hi = min(upper, key=lambda i: t[i]) if upper else None
        plan.append((lo, hi))
    return tuple(plan)


def _occurs(seq, t: tuple, anchored: bool = False) -> bool:
    """True iff `seq` has a subsequence order-isomorphic to `t`.

    With `anchored`, only occurrences using the last entry of `seq` count.
    """
    k = len(t)
    n = len(seq)
    if k == 0:
        return True
    if k > n:
        return False

    plan = _search_plan(t)
    chosen = [0] * k
    last = n - 1

    def search(j: int, start: int) -> bool:
        lo, hi = plan[j]
        low = chosen[lo] if lo is not None else 0
        high = chosen[hi] if hi is not None else None

        if anchored and j == k - 1:
            v = seq[last]
            return v > low and (high is None or v < high)

        for pos in range(start, n - k + 1 + j):
            if anchored and pos == last:
                break
            v = seq[pos]
            if v <= low or (high is not None and v >= high):
                continue
            chosen[j] = v
            if j == k - 1 or search(j + 1, pos + 1):
                return True
        return False

    return search(0, 0)


def contains_pattern(p: Permutation, t: Permutation) -> bool:
    if len(t) < 1:
        raise InvalidPatternSetError('Pattern must be nonempty')
    return _occurs(p.entries, t.entries)


def avoids(p: Permutation, patterns: PatternSet) -> bool:
    return not any(_occurs(p.entries, t.entries) for t in patterns.patterns)


# -- avoidance classes --------------------------------------------------------

def iter_av_entries(n: int, patterns: PatternSet) -> Iterator[tuple]:
    """Yield Av_n(patterns) as entry tuples, in lexicographic order.

    Permutations grow one entry at a time; a prefix that already contains
    a pattern is never extended, and since its predecessor avoided every
    pattern only occurrences through the new last entry need checking.
    """
    if n < 0:
        raise ValueError(f"Negative size {n}")

    targets = sorted({t.entries for t in patterns.patterns}, key=len)
    if n >= 1 and any(len(t) == 1 for t in targets):
        return

    prefix = []
    used = [False] * (n + 1)

    def extend():
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            prefix.append(v)
            used[v] = True
            if not any(_occurs(prefix, t, anchored=True) for t in targets):
                yield from extend()
            prefix.pop()
            used[v] = False

    yield from extend()


def enumerate_av(n: int, patterns: PatternSet) -> list:
    perms = [Permutation._trusted(e) for e in iter_av_entries(n, patterns)]
    LOGGER.debug(f"|Av_{n}({patterns})| = {len(perms)}")
    return perms


def peak_histogram(n: int, patterns: PatternSet) -> Counter:
    """Multiset {{Peak(p) : p in Av_n(patterns)}} as a Counter of IndexSets."""
    counts = Counter(peak_positions(e) for e in iter_av_entries(n, patterns))
    return Counter({IndexSet(peaks, n, peak=True): c
                    for peaks, c in counts.items()})


def peak_equivalent(a: PatternSet, b: PatternSet, n: int) -> bool:
    if n < 0:
        raise ValueError(f"Negative size {n}")
    return _histogram_signature(peak_histogram(n, a)) == \
        _histogram_signature(peak_histogram(n, b))


def _histogram_signature(histogram: Counter) -> list:
    return sorted((str(s), c) for s, c in histogram.items())


def wilf_equivalent(a: PatternSet, b: PatternSet, n: int) -> bool:
    """Equal class sizes for every size m <= n."""
    return all(sum(1 for _ in iter_av_entries(m, a)) ==
               sum(1 for _ in iter_av_entries(m, b))
               for m in range(n + 1))


# -- shuffles -----------------------------------------------------------------

def shuffle_perms(p: Permutation, q: Permutation) -> frozenset:
    """All interleavings of p with q shifted up by |p|."""
    m, n = len(p), len(q)
    shifted = tuple(x + m for x in q.entries)
    result = set()
    for slots in combinations(range(m + n), m):
        slot_set = set(slots)
        left, right = iter(p.entries), iter(shifted)
        result.add(Permutation._trusted(tuple(
            next(left) if i in slot_set else next(right)
            for i in range(m + n))))
    return frozenset(result)


def shuffle_pattern_sets(a: PatternSet, b: PatternSet) -> PatternSet:
    result = set()
    for p in a:
        for q in b:
            result |= shuffle_perms(p, q)
    return PatternSet(result)


# -- peak-preserving relabelings ----------------------------------------------

RELABEL_DESCENDING_TAIL = '132,213,312'
RELABEL_ASCENDING_TAIL = '132,213,321'


def largest_entry_relabel(p: Permutation, variant: str) -> Permutation:
    """Send p in Av_n(123,132,312), which reads (δ_{n-k-1}+k) n δ_k, to
    (ι_{n-k-1}+k) n δ_k (Av(132,213,312)) or (ι_{n-k-1}+k) n ι_k
    (Av(132,213,321)). Both maps keep the peak set."""
    n = len(p)
    if n == 0:
        return p
    if not avoids(p, PatternSet.from_str('123,132,312')):
        raise InvalidPermutationError(f"{p} is not in Av(123,132,312)")

    k = n - 1 - p.entries.index(n)
    head = tuple(range(k + 1, n))
    if variant == RELABEL_DESCENDING_TAIL:
        tail = tuple(range(k, 0, -1))
    elif variant == RELABEL_ASCENDING_TAIL:
        tail = tuple(range(1, k + 1))
    else:
        raise ValueError(f"Unknown relabel target '{variant}'")
    return Permutation._trusted(head + (n,) + tail)


def parse_optional_patterns(text: Optional[str]) -> PatternSet:
    return PatternSet.from_str(text) if text else PatternSet()
