"""Young and shifted diagrams with their standard fillings.

Rows are stored bottom-up: row 1 is the longest row and sits at the bottom,
as in the French drawing convention. A shifted row i is indented i-1 cells,
so cell j (0-based) of row i (0-based) occupies absolute column i + j.
"""

import logging
from math import comb
from typing import Iterable, Iterator, NamedTuple

from apps.pattpeak.combinat.exceptions import InvalidShapeError
from apps.pattpeak.combinat.exceptions import InvalidTableauError
from apps.pattpeak.combinat.permutations import IndexSet
from apps.pattpeak.combinat.permutations import Permutation
from apps.pattpeak.combinat.permutations import peak_set_of_set


LOGGER = logging.getLogger(__name__)


def binomial(n: int, k: int) -> int:
    """C(n, k), taken as 0 outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


class Partition(object):
    """A weakly decreasing sequence of positive parts."""

    def __init__(self, parts: Iterable[int] = ()) -> None:
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise InvalidShapeError(f"Parts of {parts} must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidShapeError(f"Parts of {parts} are not decreasing")
        self._parts = parts

    @property
    def parts(self) -> tuple:
        return self._parts

    @property
    def weight(self) -> int:
        return sum(self._parts)

    @property
    def length(self) -> int:
        return len(self._parts)

    @property
    def is_strict(self) -> bool:
        return all(a > b for a, b in zip(self._parts, self._parts[1:]))

    @property
    def display_key(self) -> tuple:
        """Order used for printing expansions: by length, then parts
        decreasing, e.g. (9), (8,1), ..., (5,4), (6,2,1), ..."""
        return len(self._parts), tuple(-p for p in self._parts)

    def __len__(self):
        return len(self._parts)

    def __iter__(self):
        return iter(self._parts)

    def __getitem__(self, index):
        return self._parts[index]

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self._parts == other._parts

    def __lt__(self, other):
        return self._parts < other._parts

    def __hash__(self):
        return hash(('partition', self._parts))

    def __str__(self):
        return '(' + ','.join(str(p) for p in self._parts) + ')'

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"

    @classmethod
    def from_str(cls, text: str) -> 'Partition':
        """Parse "(6,3)" or "6,3"."""
        text = text.strip()
        if text.startswith('(') and text.endswith(')'):
            text = text[1:-1].strip()
        if not text:
            return cls(())
        try:
            return cls(int(part) for part in text.split(','))
        except ValueError as e:
            raise InvalidShapeError(f"Cannot parse shape '{text}'") from e


class StrictPartition(Partition):
    """A partition with strictly decreasing parts."""

    def __init__(self, parts: Iterable[int] = ()) -> None:
        super().__init__(parts)
        if not self.is_strict:
            raise InvalidShapeError(f"{self} is not a strict partition")


def strict_partitions(n: int) -> list:
    """Strict partitions of n in reverse lexicographic order."""
    def gen(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first - 1):
                yield (first,) + tail

    return [StrictPartition(parts) for parts in gen(n, n)]


class Tableau(object):
    """A standard filling of a diagram; subclasses fix the row indentation."""

    # Cells a row is indented relative to the row below it
    INDENT = 0
    SHAPE_CLASS = Partition

    def __init__(self, rows: Iterable[Iterable[int]]) -> None:
        rows = tuple(tuple(int(e) for e in row) for row in rows)
        if any(not row for row in rows):
            raise InvalidTableauError('Tableau rows cannot be empty')

        try:
            self._shape = self.SHAPE_CLASS(len(row) for row in rows)
        except InvalidShapeError as e:
            raise InvalidTableauError(f"Invalid shape for {rows}: {e}") from e

        entries = sorted(e for row in rows for e in row)
        if entries != list(range(1, len(entries) + 1)):
            raise InvalidTableauError(
                f"Entries of {rows} are not exactly 1..{len(entries)}")

        for r, row in enumerate(rows):
            if any(a >= b for a, b in zip(row, row[1:])):
                raise InvalidTableauError(f"Row {r + 1} of {rows} is not increasing")
            if r == 0:
                continue
            below = rows[r - 1]
            for j, value in enumerate(row):
                if below[j + self.INDENT] >= value:
                    raise InvalidTableauError(
                        f"Column through {value} in {rows} is not increasing")

        self._rows = rows
        self._row_of = {e: r for r, row in enumerate(rows) for e in row}

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def shape(self) -> Partition:
        return self._shape

    @property
    def size(self) -> int:
        return len(self._row_of)

    @property
    def height(self) -> int:
        return len(self._rows)

    def row_of(self, value: int) -> int:
        """0-based row holding `value`."""
        return self._row_of[value]

    def position(self, value: int) -> tuple:
        """(row, absolute column), both 0-based."""
        r = self._row_of[value]
        return r, r * self.INDENT + self._rows[r].index(value)

    def descents(self) -> IndexSet:
        return tableau_descents(self)

    def peaks(self) -> IndexSet:
        return peak_set_of_set(tableau_descents(self))

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash((type(self).__name__, self._rows))

    def __str__(self):
        return '/'.join(','.join(str(e) for e in row) for row in self._rows)

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"

    @classmethod
    def from_str(cls, text: str) -> 'Tableau':
        """Parse bottom-up rows, e.g. "1,2,3,7/4,5/6"."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls([int(e) for e in row.split(',')]
                       for row in text.split('/'))
        except ValueError as e:
            raise InvalidTableauError(f"Cannot parse tableau '{text}'") from e


class YoungTableau(Tableau):
    INDENT = 0
    SHAPE_CLASS = Partition


class ShiftedTableau(Tableau):
    INDENT = 1
    SHAPE_CLASS = StrictPartition


class MarkedShiftedTableau(object):
    """A standard shifted tableau whose off-diagonal entries may be marked."""

    def __init__(self, base: ShiftedTableau, marks: Iterable[int] = ()) -> None:
        marks = frozenset(int(m) for m in marks)
        diagonal = {row[0] for row in base.rows}
        if marks & diagonal:
            raise InvalidTableauError(
                f"Diagonal entries {sorted(marks & diagonal)} cannot be marked")
        if any(m not in base._row_of for m in marks):
            raise InvalidTableauError(f"Marks {sorted(marks)} are not entries")
        self._base = base
        self._marks = marks

    @property
    def base(self) -> ShiftedTableau:
        return self._base

    @property
    def marks(self) -> frozenset:
        return self._marks

    @property
    def shape(self) -> StrictPartition:
        return self._base.shape

    def unmark(self) -> ShiftedTableau:
        return self._base

    def __eq__(self, other):
        if not isinstance(other, MarkedShiftedTableau):
            return NotImplemented
        return (self._base, self._marks) == (other._base, other._marks)

    def __hash__(self):
        return hash(('marked', self._base, self._marks))

    def __str__(self):
        return '/'.join(','.join(f"{e}'" if e in self._marks else str(e)
                                 for e in row)
                        for row in self._base.rows)

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"

    @classmethod
    def from_str(cls, text: str) -> 'MarkedShiftedTableau':
        """Parse "1,2,3',7/4,5/6"; an apostrophe marks an entry."""
        marks = set()
        rows = []
        for row in text.strip().split('/'):
            cells = []
            for cell in row.split(','):
                cell = cell.strip()
                if cell.endswith("'"):
                    cell = cell[:-1]
                    if not cell.isdigit():
                        raise InvalidTableauError(f"Cannot parse tableau '{text}'")
                    marks.add(int(cell))
                cells.append(cell)
            rows.append(','.join(cells))
        return cls(ShiftedTableau.from_str('/'.join(rows)), marks)


# -- enumeration --------------------------------------------------------------

def _fillings(shape: tuple, indent: int) -> Iterator[tuple]:
    """Place 1..n into addable cells by backtracking, trying lower rows
    first; yields rows as tuples."""
    n = sum(shape)
    rows = [[] for _ in shape]

    def addable(r):
        filled = len(rows[r])
        if filled == shape[r]:
            return False
        return r == 0 or len(rows[r - 1]) >= filled + 1 + indent

    def place(value):
        if value > n:
            yield tuple(tuple(row) for row in rows)
            return
        for r in range(len(shape)):
            if addable(r):
                rows[r].append(value)
                yield from place(value + 1)
                rows[r].pop()

    yield from place(1)


def enumerate_ssht(shape: StrictPartition) -> list:
    if not isinstance(shape, Partition):
        shape = StrictPartition(shape)
    if not shape.is_strict:
        raise InvalidShapeError(f"{shape} is not strict")
    return [ShiftedTableau(rows) for rows in _fillings(shape.parts, 1)]


def enumerate_syt(shape: Partition) -> list:
    if not isinstance(shape, Partition):
        shape = Partition(shape)
    return [YoungTableau(rows) for rows in _fillings(shape.parts, 0)]


def tableau_descents(t: Tableau) -> IndexSet:
    """{i : i+1 sits in a strictly higher row than i}."""
    n = t.size
    return IndexSet([i for i in range(1, n) if t.row_of(i + 1) > t.row_of(i)], n)


def tableau_peaks(t: Tableau) -> IndexSet:
    return peak_set_of_set(tableau_descents(t))


def count_two_row_syt(a: int, b: int) -> int:
    if b < 0 or a < b:
        raise InvalidShapeError(f"({a},{b}) is not a partition")
    return binomial(a + b, b) - binomial(a + b, b - 1)


def count_two_row_ssht(n: int, k: int) -> int:
    """|SShT(n-k, k)|."""
    if k < 0 or (k > 0 and n - k <= k):
        raise InvalidShapeError(f"({n - k},{k}) is not a strict partition")
    if n == 0:
        return 1
    return binomial(n - 1, k) - binomial(n - 1, k - 1)


def reading_word(t: YoungTableau) -> Permutation:
    """Rows left to right, top row first."""
    return Permutation(e for row in reversed(t.rows) for e in row)


# -- two-row constructions ----------------------------------------------------

def _two_rows(t: ShiftedTableau) -> tuple:
    if t.height > 2:
        raise InvalidShapeError(f"{t.shape} has more than two rows")
    bottom = t.rows[0] if t.rows else ()
    top = t.rows[1] if t.height == 2 else ()
    return bottom, top


def build_s_sprime(t: ShiftedTableau) -> tuple:
    """Return (S, S') for a shifted tableau of shape (n-k, k).

    S slides the top row of t one cell left. S' additionally moves the
    entry s up from the bottom row, where s is the largest bottom entry
    exceeding the top entry two columns to its left (or 2 when there is
    none); S' exists only when n > 2k+1.
    """
    bottom, top = _two_rows(t)
    n, k = len(bottom) + len(top), len(top)

    s_rows = (bottom, top) if top else (bottom,)
    s_tableau = YoungTableau(s_rows)
    if n <= 2 * k + 1:
        return s_tableau, None

    candidates = [bottom[j + 2] for j in range(k)
                  if j + 2 < len(bottom) and bottom[j + 2] > top[j]]
    s = max(candidates) if candidates else bottom[1]
    LOGGER.debug(f"S' for {t} shifts s={s}")

    new_bottom = tuple(e for e in bottom if e != s)
    new_top = tuple(sorted(top + (s,)))
    return s_tableau, YoungTableau((new_bottom, new_top))


class AbcLabeling(NamedTuple):
    a: tuple
    b: tuple
    c: tuple


def label_abc(t: ShiftedTableau) -> AbcLabeling:
    bottom, top = _two_rows(t)
    k = len(top)

    b = [0] * k
    bound = None
    for i in range(k - 1, -1, -1):
        limit = top[i] if bound is None else min(top[i], bound)
        smaller = [e for e in bottom if e < limit]
        assert smaller, f"No b_{i + 1} label below {limit} in {t}"
        b[i] = bound = max(smaller)

    used = set(b)
    c = tuple(e for e in bottom if e not in used)
    return AbcLabeling(a=tuple(top), b=tuple(b), c=c)


def labeled_permutations(t: ShiftedTableau) -> list:
    """The V-shaped permutations sent to t by Sagan-Worley insertion: the
    descending arm holds every a and c_1..c_j, the ascending arm the rest,
    for j = 1..n-2k."""
    labels = label_abc(t)
    result = []
    for j in range(1, len(labels.c) + 1):
        left = sorted(labels.a + labels.c[:j], reverse=True)
        right = sorted(labels.b + labels.c[j:])
        result.append(Permutation(left + right))
    return result


def two_row_ssht(n: int) -> list:
    """Every standard shifted tableau of size n with at most two rows."""
    shapes = [StrictPartition(p for p in (n - k, k) if p)
              for k in range(n // 2 + 1) if k == 0 or n - k > k]
    return [t for shape in shapes for t in enumerate_ssht(shape)]
