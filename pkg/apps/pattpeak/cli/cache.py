"""On-disk cache of peak-set histograms of avoidance classes.

One JSON file per (n, pattern set). Entries are advisory: anything that
fails to load or validate is treated as a miss and recomputed.
"""

import hashlib
import logging
import os
import tempfile
from collections import Counter
from math import factorial
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ValidationError

from apps.pattpeak.combinat.exceptions import PattpeakException
from apps.pattpeak.combinat.permutations import IndexSet
from apps.pattpeak.combinat.permutations import PatternSet


LOGGER = logging.getLogger(__name__)

CACHE_FORMAT_VERSION = 2


class HistogramBucketModel(BaseModel):
    peaks: List[int]
    count: int


class HistogramEntryModel(BaseModel):
    version: int = CACHE_FORMAT_VERSION
    n: int
    patterns: str
    checksum: str
    histogram: List[HistogramBucketModel]


def entry_checksum(n: int, patterns: str,
                   buckets: List[HistogramBucketModel]) -> str:
    """sha256 over the key and every (peak set, count) bucket, in order."""
    text = ';'.join(f"{b.peaks}:{b.count}" for b in buckets)
    return hashlib.sha256(f"{n}|{patterns}|{text}".encode('utf-8')).hexdigest()


class HistogramCache(object):
    """Peak histograms of Av_n(Π) keyed by n and the canonical text of Π."""

    def __init__(self, directory: Optional[Path]) -> None:
        self._directory = Path(directory) if directory is not None else None
        self._hits = 0
        self._misses = 0

    @property
    def enabled(self) -> bool:
        return self._directory is not None

    @property
    def hits(self) -> int:
        return self._hits

    @property
    def misses(self) -> int:
        return self._misses

    def path_for(self, n: int, patterns: PatternSet) -> Path:
        digest = hashlib.sha256(patterns.canonical.encode('utf-8')).hexdigest()
        return self._directory / f"av-n{n}-{digest[:20]}.json"

    def get(self, n: int, patterns: PatternSet) -> Optional[Counter]:
        if not self.enabled:
            return None

        path = self.path_for(n, patterns)
        try:
            entry = HistogramEntryModel.model_validate_json(path.read_text('utf-8'))
            histogram = self._validate(entry, n, patterns)
        except FileNotFoundError:
            histogram = None
        except (OSError, ValidationError, PattpeakException, ValueError) as e:
            LOGGER.warning(f"Ignoring unreadable cache entry {path}: {e}")
            histogram = None

        if histogram is None:
            self._misses += 1
            LOGGER.debug(f"Cache miss for n={n} Π={patterns}")
        else:
            self._hits += 1
            LOGGER.debug(f"Cache hit for n={n} Π={patterns}")
        return histogram

    @staticmethod
    def _validate(entry: HistogramEntryModel, n: int,
                  patterns: PatternSet) -> Optional[Counter]:
        if entry.version != CACHE_FORMAT_VERSION or entry.n != n or \
                entry.patterns != patterns.canonical:
            LOGGER.warning(f"Cache entry for n={n} Π={patterns} has a "
                           f"mismatched key, ignoring it")
            return None
        if entry_checksum(n, entry.patterns, entry.histogram) != entry.checksum:
            LOGGER.warning(f"Cache entry for n={n} Π={patterns} fails its "
                           f"checksum, ignoring it")
            return None
        total = sum(b.count for b in entry.histogram)
        if total > factorial(n) or any(b.count <= 0 for b in entry.histogram):
            LOGGER.warning(f"Cache entry for n={n} Π={patterns} has impossible "
                           f"counts (total {total}, at most {n}! allowed), "
                           f"ignoring it")
            return None
        return Counter({IndexSet(b.peaks, n, peak=True): b.count
                        for b in entry.histogram})

    def put(self, n: int, patterns: PatternSet, histogram: Counter) -> None:
        if not self.enabled:
            return

        buckets = [HistogramBucketModel(peaks=list(s.elements), count=c)
                   for s, c in sorted(histogram.items(),
                                      key=lambda kv: kv[0].sort_key)]
        entry = HistogramEntryModel(
            n=n, patterns=patterns.canonical,
            checksum=entry_checksum(n, patterns.canonical, buckets),
            histogram=buckets)

        path = self.path_for(n, patterns)
        try:
            self._directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self._directory, suffix='.tmp')
            with os.fdopen(fd, 'w', encoding='utf-8') as f:
                f.write(entry.model_dump_json())
            os.replace(tmp, path)
        except OSError as e:
            LOGGER.warning(f"Could not write cache entry {path}: {e}")
            return
        LOGGER.debug(f"Cached histogram for n={n} Π={patterns} at {path}")
