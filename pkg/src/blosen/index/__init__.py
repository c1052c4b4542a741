"""Segmented fielded inverted index with snapshot readers.

On-disk layout is documented in docs/index-format.md.  One writer at a
time per index directory (lock file); any number of readers, each pinned
to the set of segments committed when it was opened.
"""

from .errors import (
    CommitFailed,
    DuplicateDocument,
    IndexLocked,
    MergeFailed,
    NoSuchDocument,
    WriterClosed,
)
from .reader import IndexReader, IndexStats, index_size_ratio
from .writer import IndexWriter

__all__ = [
    "IndexWriter",
    "IndexReader",
    "IndexStats",
    "index_size_ratio",
    "DuplicateDocument",
    "WriterClosed",
    "CommitFailed",
    "MergeFailed",
    "NoSuchDocument",
    "IndexLocked",
]
