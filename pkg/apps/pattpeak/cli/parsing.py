"""Argument parsers for permutation, pattern, tableau and shape literals.

Each parser is usable as an argparse `type=`: malformed input raises
`argparse.ArgumentTypeError`, which argparse reports as a usage error.
"""

import argparse
import logging
import re

from apps.pattpeak.combinat.exceptions import PattpeakException
from apps.pattpeak.combinat.permutations import PatternSet
from apps.pattpeak.combinat.permutations import Permutation
from apps.pattpeak.combinat.permutations import parse_optional_patterns
from apps.pattpeak.combinat.qsym import BASES
from apps.pattpeak.combinat.tableaux import MarkedShiftedTableau
from apps.pattpeak.combinat.tableaux import ShiftedTableau
from apps.pattpeak.combinat.tableaux import StrictPartition


LOGGER = logging.getLogger(__name__)

BASIS_Q = 'Q'
OUTPUT_BASES = BASES + (BASIS_Q,)

_MARK_RE = re.compile(r"\d+'")


def _wrap(kind: str, parser, text: str):
    try:
        value = parser(text)
    except PattpeakException as e:
        LOGGER.debug(f"Rejected {kind} '{text}': {e}")
        raise argparse.ArgumentTypeError(f"invalid {kind} '{text}': {e}") from e
    return value


def permutation(text: str) -> Permutation:
    return _wrap('permutation', Permutation.from_str, text)


def pattern_list(text: str) -> PatternSet:
    return _wrap('pattern list', parse_optional_patterns, text)


def strict_partition(text: str) -> StrictPartition:
    return _wrap('strict partition', StrictPartition.from_str, text)


def shifted_tableau(text: str) -> ShiftedTableau:
    """A standard shifted tableau; marked entries ("5'") are unmarked."""
    if _MARK_RE.search(text):
        return _wrap('shifted tableau',
                     lambda t: MarkedShiftedTableau.from_str(t).unmark(), text)
    return _wrap('shifted tableau', ShiftedTableau.from_str, text)


def basis(text: str) -> str:
    value = text.strip().upper()
    if value not in OUTPUT_BASES:
        raise argparse.ArgumentTypeError(
            f"invalid basis '{text}': must be one of {', '.join(OUTPUT_BASES)}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer '{text}'") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def degree(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid degree '{text}'") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"degree must be nonnegative, got {value}")
    return value
