"""Snapshot reader over the committed segments of an index.

A reader loads the manifest once at open and keeps every referenced
segment fully in memory, so later commits, merges, and file cleanup
never affect it.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from ..docmodel import BlogPostDocument
from .errors import NoSuchDocument
from .manifest import read_manifest
from .segment import SegmentData, load_segment


@dataclass(frozen=True)
class IndexStats:
    total_docs: int
    indexed_text_bytes: int
    index_bytes: int
    doc_freq: dict


def index_size_ratio(stats: IndexStats) -> float:
    """Postings+dictionary bytes as a fraction of the indexed text bytes."""
    if stats.indexed_text_bytes <= 0:
        raise ZeroDivisionError("index contains no indexed text")
    return stats.index_bytes / stats.indexed_text_bytes


class IndexReader:
    def __init__(self, directory: str):
        manifest = read_manifest(directory)
        self._segments: list[tuple[int, SegmentData, set]] = []
        for entry in manifest["segments"]:
            seg = load_segment(directory, entry["id"], entry["doc_count"], entry["indexed_bytes"])
            deleted = set(entry.get("deleted", []))
            self._segments.append((entry["base"], seg, deleted))
        self._doc_count = sum(
            seg.doc_count - len(deleted) for _, seg, deleted in self._segments
        )

    @classmethod
    def open(cls, directory: str) -> "IndexReader":
        return cls(directory)

    # -- documents -----------------------------------------------------

    @property
    def doc_count(self) -> int:
        return self._doc_count

    @property
    def segment_count(self) -> int:
        return len(self._segments)

    def live_doc_numbers(self) -> list[int]:
        out = []
        for base, seg, deleted in self._segments:
            out.extend(base + i for i in range(seg.doc_count) if i not in deleted)
        return out

    def stored_document(self, doc_number: int) -> BlogPostDocument:
        for base, seg, deleted in self._segments:
            if base <= doc_number < base + seg.doc_count:
                local_id = doc_number - base
                if local_id in deleted:
                    raise NoSuchDocument(doc_number)
                return seg.document(local_id)
        raise NoSuchDocument(doc_number)

    # -- postings ------------------------------------------------------

    def postings(self, field: str, token: str) -> list[tuple[int, int, list[int]]]:
        """Sorted (doc number, tf, positions) for the (field, token) term."""
        out = []
        for base, seg, deleted in self._segments:
            plist = seg.terms.get((field, token))
            if not plist:
                continue
            for local_id, positions in plist:
                if local_id not in deleted:
                    out.append((base + local_id, len(positions), positions))
        return out

    def doc_frequency(self, field: str, token: str) -> int:
        return len(self.postings(field, token))

    def field_length(self, field: str, doc_number: int) -> int:
        for base, seg, deleted in self._segments:
            if base <= doc_number < base + seg.doc_count:
                local_id = doc_number - base
                if local_id in deleted:
                    raise NoSuchDocument(doc_number)
                return seg.lengths[local_id].get(field, 0)
        raise NoSuchDocument(doc_number)

    def avg_field_length(self, field: str) -> float:
        total = 0
        n = 0
        for base, seg, deleted in self._segments:
            for local_id in range(seg.doc_count):
                if local_id not in deleted:
                    total += seg.lengths[local_id].get(field, 0)
                    n += 1
        return total / n if n else 0.0

    def terms(self) -> list[tuple[str, str]]:
        """All (field, token) terms with at least one live posting."""
        seen = set()
        for _, seg, deleted in self._segments:
            for term, plist in seg.terms.items():
                if term in seen:
                    continue
                if any(local_id not in deleted for local_id, _ in plist):
                    seen.add(term)
        return sorted(seen)

    # -- stats ---------------------------------------------------------

    def stats(self) -> IndexStats:
        doc_freq = defaultdict(int)
        for _, seg, deleted in self._segments:
            for (fname, token), plist in seg.terms.items():
                live = sum(1 for local_id, _ in plist if local_id not in deleted)
                if live:
                    doc_freq[(fname, token)] += live
        return IndexStats(
            total_docs=self._doc_count,
            indexed_text_bytes=sum(seg.indexed_bytes for _, seg, _d in self._segments),
            index_bytes=sum(seg.terms_file_bytes for _, seg, _d in self._segments),
            doc_freq=dict(doc_freq),
        )
