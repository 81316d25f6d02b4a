"""RSK and Sagan-Worley insertion, and the map Φ built from them.

Trace lines use 1-based (row, column) coordinates; shifted columns are
absolute, so the diagonal cell of row r is in column r.
"""

import logging
from bisect import bisect_left
from bisect import bisect_right
from collections import Counter
from itertools import permutations
from typing import Optional

from apps.pattpeak.combinat.exceptions import InvalidTableauError
from apps.pattpeak.combinat.permutations import Permutation
from apps.pattpeak.combinat.tableaux import MarkedShiftedTableau
from apps.pattpeak.combinat.tableaux import ShiftedTableau
from apps.pattpeak.combinat.tableaux import YoungTableau
from apps.pattpeak.combinat.tableaux import build_s_sprime
from apps.pattpeak.combinat.tableaux import enumerate_syt
from apps.pattpeak.combinat.tableaux import reading_word


LOGGER = logging.getLogger(__name__)


class InsertionResult(object):
    """Insertion and recording tableaux, plus an optional bump trace that
    does not take part in equality."""

    def __init__(self, insertion, recording, trace: Optional[list] = None):
        if insertion.shape != recording.shape:
            raise InvalidTableauError(
                f"Shapes {insertion.shape} and {recording.shape} differ")
        self._insertion = insertion
        self._recording = recording
        self._trace = tuple(trace) if trace is not None else None

    @property
    def insertion(self):
        return self._insertion

    @property
    def recording(self):
        return self._recording

    @property
    def trace(self) -> Optional[tuple]:
        return self._trace

    @property
    def shape(self):
        return self._insertion.shape

    def __iter__(self):
        return iter((self._insertion, self._recording))

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return (self._insertion, self._recording) == \
            (other._insertion, other._recording)

    def __hash__(self):
        return hash((self._insertion, self._recording))

    def __str__(self):
        return (f"<{type(self).__name__} insertion={self._insertion} "
                f"recording={self._recording}>")


class RskResult(InsertionResult):
    pass


class SwResult(InsertionResult):
    pass


def rsk(p: Permutation, trace: bool = False) -> RskResult:
    rows, rec = [], []
    events = [] if trace else None

    for i, x in enumerate(p, start=1):
        r = 0
        while True:
            if r == len(rows):
                rows.append([x])
                rec.append([i])
                if trace:
                    events.append(f"place {x} @({r + 1},1)")
                break
            row = rows[r]
            j = bisect_right(row, x)
            if j == len(row):
                row.append(x)
                rec[r].append(i)
                if trace:
                    events.append(f"place {x} @({r + 1},{j + 1})")
                break
            y, row[j] = row[j], x
            if trace:
                events.append(f"row-bump {y}←{x} @({r + 1},{j + 1})")
            x = y
            r += 1

    return RskResult(YoungTableau(rows), YoungTableau(rec), events)


def inverse_rsk(insertion: YoungTableau, recording: YoungTableau) -> Permutation:
    """Undo RSK by reverse bumping, removing recording entries n..1."""
    if insertion.shape != recording.shape:
        raise InvalidTableauError(
            f"Shapes {insertion.shape} and {recording.shape} differ")

    rows = [list(row) for row in insertion.rows]
    n = insertion.size
    word = [0] * n

    for i in range(n, 0, -1):
        # The largest remaining recording entry always sits in a corner
        r = recording.row_of(i)
        x = rows[r].pop()
        if not rows[r]:
            rows.pop()
        for rr in range(r - 1, -1, -1):
            row = rows[rr]
            j = bisect_left(row, x) - 1
            x, row[j] = row[j], x
        word[i - 1] = x

    return Permutation(word)


def sagan_worley(p: Permutation, trace: bool = False) -> SwResult:
    rows, rec = [], []
    marks = set()
    events = [] if trace else None

    def add_cell(r, x, i):
        if r == len(rows):
            rows.append([])
            rec.append([])
        rows[r].append(x)
        rec[r].append(i)
        if trace:
            events.append(f"place {x} @({r + 1},{r + len(rows[r])})")

    for i, x in enumerate(p, start=1):
        r = 0
        column = None
        while True:
            if r == len(rows) or bisect_right(rows[r], x) == len(rows[r]):
                add_cell(r, x, i)
                break
            row = rows[r]
            j = bisect_right(row, x)
            y, row[j] = row[j], x
            if trace:
                events.append(f"row-bump {y}←{x} @({r + 1},{r + j + 1})")
            x = y
            if j == 0:
                column = r + 1
                break
            r += 1

        if column is None:
            continue

        marks.add(i)
        while True:
            # Column cells are the rows reaching it, contiguous from row 0
            cells = [rr for rr in range(min(column, len(rows) - 1) + 1)
                     if column - rr < len(rows[rr])]
            values = [rows[rr][column - rr] for rr in cells]
            h = bisect_right(values, x)
            if h == len(values):
                # Column insertion only ever lands weakly below where it began
                top = len(cells)
                assert top < len(rows) and len(rows[top]) == column - top, \
                    f"Column {column} cannot grow while inserting {p}"
                add_cell(top, x, i)
                break
            rr = cells[h]
            z, rows[rr][column - rr] = rows[rr][column - rr], x
            if trace:
                events.append(f"col-bump {z}←{x} @({rr + 1},{column + 1})")
            x = z
            column += 1

    recording = MarkedShiftedTableau(ShiftedTableau(rec), marks)
    return SwResult(ShiftedTableau(rows), recording, events)


def phi(p: Permutation) -> ShiftedTableau:
    """Φ(p) = R(rw(Q(p)))."""
    return sagan_worley(reading_word(rsk(p).recording)).insertion


def phi_preimage(t: ShiftedTableau) -> frozenset:
    """{p in Av_n(321) : Φ(p) = t} for t of shape (n-k, k).

    These are exactly the permutations whose RSK recording tableau is S or
    S' of t, paired with every insertion tableau of the same shape.
    """
    s_tableau, s_prime = build_s_sprime(t)
    result = set()
    for recording in (s_tableau, s_prime):
        if recording is None:
            continue
        for insertion in enumerate_syt(recording.shape):
            result.add(inverse_rsk(insertion, recording))
    LOGGER.debug(f"|Φ^-1({t})| = {len(result)}")
    return frozenset(result)


def unmark_class_sizes(n: int) -> Counter:
    """For each standard shifted tableau T of size n, the number of
    permutations p with unmark(S(p)) = T."""
    return Counter(sagan_worley(Permutation._trusted(e)).recording.unmark()
                   for e in permutations(range(1, n + 1)))
