"""Index writer: buffered adds, deletions, commit, and segment merging.

A lock file enforces the single-writer rule.  Adds and deletions are
buffered; ``commit`` turns the buffer into one new immutable segment and
atomically publishes the new manifest.  Readers opened before a commit
never see its segments.
"""

from __future__ import annotations

import os

from ..docmodel import BlogPostDocument
from .errors import CommitFailed, DuplicateDocument, IndexLocked, MergeFailed, WriterClosed
from .manifest import read_manifest, replace_manifest
from .segment import SegmentData, build_segment, load_segment, write_segment

LOCK_NAME = "write.lock"
DEFAULT_AUTO_MERGE_SEGMENTS = 8


class IndexWriter:
    def __init__(self, directory: str, auto_merge_at: int = DEFAULT_AUTO_MERGE_SEGMENTS):
        os.makedirs(directory, exist_ok=True)
        self.directory = directory
        self.auto_merge_at = auto_merge_at
        self._lock_path = os.path.join(directory, LOCK_NAME)
        try:
            fd = os.open(self._lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise IndexLocked("index at %s already has a writer" % directory) from None
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        self._closed = False
        self._manifest = read_manifest(directory)
        self._buffer: list[BlogPostDocument] = []
        self._pending_deletes: set[str] = set()
        # post_url -> (segment index in manifest, local doc id) for live docs
        self._committed_urls: dict[str, tuple[int, int]] = {}
        for seg_idx, entry in enumerate(self._manifest["segments"]):
            seg = load_segment(directory, entry["id"], entry["doc_count"], entry["indexed_bytes"])
            deleted = set(entry.get("deleted", []))
            for local_id, url in enumerate(seg.post_urls()):
                if local_id not in deleted:
                    self._committed_urls[url] = (seg_idx, local_id)
        # crash-injection hook for durability tests: called after segment
        # files are written, before the manifest is replaced
        self.pre_publish_hook = None

    # -- lifecycle -----------------------------------------------------

    def close(self):
        if not self._closed:
            self._closed = True
            try:
                os.unlink(self._lock_path)
            except FileNotFoundError:
                pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def _check_open(self):
        if self._closed:
            raise WriterClosed("writer is closed")

    # -- updates -------------------------------------------------------

    def add_document(self, doc: BlogPostDocument) -> int:
        self._check_open()
        url = doc.post_url
        if any(b.post_url == url for b in self._buffer):
            raise DuplicateDocument(url)
        if url in self._committed_urls and url not in self._pending_deletes:
            raise DuplicateDocument(url)
        doc_number = self._manifest["next_doc"] + len(self._buffer)
        self._buffer.append(doc)
        return doc_number

    def delete_document(self, post_url: str) -> bool:
        self._check_open()
        for i, doc in enumerate(self._buffer):
            if doc.post_url == post_url:
                del self._buffer[i]
                return True
        if post_url in self._committed_urls and post_url not in self._pending_deletes:
            self._pending_deletes.add(post_url)
            return True
        return False

    # -- commit --------------------------------------------------------

    def commit(self) -> str | None:
        """Publish buffered adds/deletes as a new committed state.

        Returns the new segment id, or None when there was nothing
        buffered (deletions alone update the manifest without creating a
        segment).
        """
        self._check_open()
        if not self._buffer and not self._pending_deletes:
            return None

        manifest = {
            "version": self._manifest["version"],
            "next_doc": self._manifest["next_doc"],
            "next_seg": self._manifest["next_seg"],
            "segments": [dict(entry) for entry in self._manifest["segments"]],
        }
        for url in self._pending_deletes:
            seg_idx, local_id = self._committed_urls[url]
            deleted = set(manifest["segments"][seg_idx].get("deleted", []))
            deleted.add(local_id)
            manifest["segments"][seg_idx]["deleted"] = sorted(deleted)

        seg_id = None
        try:
            if self._buffer:
                seg_id = "seg_%06d" % manifest["next_seg"]
                seg = build_segment(seg_id, self._buffer)
                write_segment(self.directory, seg)
                manifest["segments"].append({
                    "id": seg_id,
                    "base": manifest["next_doc"],
                    "doc_count": seg.doc_count,
                    "indexed_bytes": seg.indexed_bytes,
                    "deleted": [],
                })
                manifest["next_doc"] += seg.doc_count
                manifest["next_seg"] += 1
            if self.pre_publish_hook is not None:
                self.pre_publish_hook()
            replace_manifest(self.directory, manifest)
        except Exception as exc:
            raise CommitFailed(str(exc)) from exc

        for url in self._pending_deletes:
            del self._committed_urls[url]
        if self._buffer:
            base = self._manifest["next_doc"]
            seg_idx = len(manifest["segments"]) - 1
            for local_id, doc in enumerate(self._buffer):
                self._committed_urls[doc.post_url] = (seg_idx, local_id)
        self._manifest = manifest
        self._buffer = []
        self._pending_deletes = set()

        if len(self._manifest["segments"]) > self.auto_merge_at:
            self.merge_segments()
        return seg_id

    # -- merge ---------------------------------------------------------

    def merge_segments(self) -> str | None:
        """Collapse all committed segments into one, dropping deleted docs.

        Doc numbers are remapped contiguously from 0.  Returns the merged
        segment id, or None with fewer than 2 segments.
        """
        self._check_open()
        if self._buffer or self._pending_deletes:
            raise MergeFailed("commit pending changes before merging")
        if len(self._manifest["segments"]) < 2:
            return None

        live_docs = []
        for entry in self._manifest["segments"]:
            seg = load_segment(self.directory, entry["id"], entry["doc_count"], entry["indexed_bytes"])
            deleted = set(entry.get("deleted", []))
            for local_id in range(seg.doc_count):
                if local_id not in deleted:
                    live_docs.append(seg.document(local_id))

        old_entries = list(self._manifest["segments"])
        seg_id = "seg_%06d" % self._manifest["next_seg"]
        try:
            merged = build_segment(seg_id, live_docs)
            write_segment(self.directory, merged)
            manifest = {
                "version": self._manifest["version"],
                "next_doc": merged.doc_count,
                "next_seg": self._manifest["next_seg"] + 1,
                "segments": [{
                    "id": seg_id,
                    "base": 0,
                    "doc_count": merged.doc_count,
                    "indexed_bytes": merged.indexed_bytes,
                    "deleted": [],
                }] if merged.doc_count else [],
            }
            if self.pre_publish_hook is not None:
                self.pre_publish_hook()
            replace_manifest(self.directory, manifest)
        except Exception as exc:
            raise MergeFailed(str(exc)) from exc

        self._manifest = manifest
        self._committed_urls = {
            doc.post_url: (0, local_id) for local_id, doc in enumerate(live_docs)
        }
        # old segment files are unreferenced now; best-effort cleanup
        for entry in old_entries:
            for suffix in (".terms", ".stored"):
                try:
                    os.unlink(os.path.join(self.directory, entry["id"] + suffix))
                except OSError:
                    pass
        return seg_id

    @property
    def segment_count(self) -> int:
        return len(self._manifest["segments"])
