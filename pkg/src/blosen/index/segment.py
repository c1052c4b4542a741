"""Segment construction and loading.

A segment is immutable once written.  It consists of two files:

  <id>.terms  - per-doc field lengths + term dictionary with postings
  <id>.stored - canonical JSON of every stored document

Doc ids inside a segment are local (0..n-1); the manifest records the
global base for each segment.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field

from ..docmodel import BlogPostDocument, DEFAULT_SCHEMA, from_canonical_json, indexable_fields, to_canonical_json
from ..tokenizer import tokenize
from .codec import ByteCursor, write_string, write_u32, write_varint

TERMS_MAGIC = b"BLOT"
STORED_MAGIC = b"BLOS"
FORMAT_VERSION = 1

SCHEMA = {spec.name: spec for spec in DEFAULT_SCHEMA}


def invert_document(doc: BlogPostDocument):
    """Tokenize one document into (postings, field_lengths, indexed_bytes).

    postings: {(field, token): [positions]}; untokenized fields index the
    whole lowercased value as a single token at position 0.
    """
    postings = defaultdict(list)
    lengths = {}
    nbytes = 0
    for name, values in indexable_fields(doc).items():
        spec = SCHEMA[name]
        if not spec.indexed:
            continue
        length = 0
        if spec.tokenized:
            offset = 0
            for value in values:
                toks = tokenize(value)
                all_positions = tokenize(value, remove_stopwords=False)
                for token, pos in toks:
                    postings[(name, token)].append(offset + pos)
                span = (all_positions[-1][1] + 1) if all_positions else 0
                offset += span
                length += len(toks)
                nbytes += len(value.encode("utf-8"))
        else:
            for i, value in enumerate(values):
                token = value.strip().lower()
                if token:
                    postings[(name, token)].append(i)
                    length += 1
                nbytes += len(value.encode("utf-8"))
        lengths[name] = length
    return postings, lengths, nbytes


@dataclass
class SegmentData:
    """In-memory form of one segment."""

    seg_id: str
    doc_count: int
    # (field, token) -> list of (local doc id, [positions])
    terms: dict = field(default_factory=dict)
    # per local doc: {field: token count}
    lengths: list = field(default_factory=list)
    # per local doc: raw canonical JSON bytes
    stored: list = field(default_factory=list)
    indexed_bytes: int = 0
    terms_file_bytes: int = 0

    _docs_cache: dict = field(default_factory=dict, repr=False)

    def document(self, local_id: int) -> BlogPostDocument:
        doc = self._docs_cache.get(local_id)
        if doc is None:
            doc = from_canonical_json(self.stored[local_id].decode("utf-8"))
            self._docs_cache[local_id] = doc
        return doc

    def post_urls(self) -> list:
        return [self.document(i).post_url for i in range(self.doc_count)]


def build_segment(seg_id: str, docs: list) -> SegmentData:
    """Invert a batch of documents into an in-memory segment."""
    seg = SegmentData(seg_id=seg_id, doc_count=len(docs))
    terms = defaultdict(list)
    for local_id, doc in enumerate(docs):
        postings, lengths, nbytes = invert_document(doc)
        for term, positions in postings.items():
            terms[term].append((local_id, sorted(positions)))
        seg.lengths.append(lengths)
        seg.stored.append(to_canonical_json(doc).encode("utf-8"))
        seg.indexed_bytes += nbytes
    seg.terms = {t: terms[t] for t in sorted(terms)}
    return seg


def encode_terms(seg: SegmentData) -> bytes:
    buf = bytearray()
    buf.extend(TERMS_MAGIC)
    write_u32(buf, FORMAT_VERSION)
    # field-length section
    write_varint(buf, seg.doc_count)
    for lengths in seg.lengths:
        write_varint(buf, len(lengths))
        for name in sorted(lengths):
            write_string(buf, name)
            write_varint(buf, lengths[name])
    # term dictionary + postings
    write_varint(buf, len(seg.terms))
    for (fname, token), plist in seg.terms.items():
        write_string(buf, fname)
        write_string(buf, token)
        write_varint(buf, len(plist))
        prev_doc = 0
        for local_id, positions in plist:
            write_varint(buf, local_id - prev_doc)
            prev_doc = local_id
            write_varint(buf, len(positions))
            prev_pos = 0
            for pos in positions:
                write_varint(buf, pos - prev_pos)
                prev_pos = pos
    return bytes(buf)


def encode_stored(seg: SegmentData) -> bytes:
    buf = bytearray()
    buf.extend(STORED_MAGIC)
    write_u32(buf, FORMAT_VERSION)
    write_varint(buf, seg.doc_count)
    for raw in seg.stored:
        write_varint(buf, len(raw))
        buf.extend(raw)
    return bytes(buf)


def write_segment(directory: str, seg: SegmentData) -> None:
    terms_payload = encode_terms(seg)
    for suffix, payload in ((".terms", terms_payload), (".stored", encode_stored(seg))):
        path = os.path.join(directory, seg.seg_id + suffix)
        with open(path, "wb") as fh:
            fh.write(payload)
            fh.flush()
            os.fsync(fh.fileno())
    seg.terms_file_bytes = len(terms_payload)


def load_segment(directory: str, seg_id: str, doc_count: int, indexed_bytes: int) -> SegmentData:
    terms_path = os.path.join(directory, seg_id + ".terms")
    with open(terms_path, "rb") as fh:
        data = fh.read()
    if data[:4] != TERMS_MAGIC:
        raise ValueError("bad terms file magic for segment %s" % seg_id)
    cur = ByteCursor(data, 4)
    if cur.read_u32() != FORMAT_VERSION:
        raise ValueError("unsupported terms format version")
    seg = SegmentData(seg_id=seg_id, doc_count=doc_count,
                      indexed_bytes=indexed_bytes, terms_file_bytes=len(data))
    n_docs = cur.read_varint()
    for _ in range(n_docs):
        n_fields = cur.read_varint()
        lengths = {}
        for _ in range(n_fields):
            name = cur.read_string()
            lengths[name] = cur.read_varint()
        seg.lengths.append(lengths)
    n_terms = cur.read_varint()
    for _ in range(n_terms):
        fname = cur.read_string()
        token = cur.read_string()
        n_postings = cur.read_varint()
        plist = []
        doc_id = 0
        for i in range(n_postings):
            doc_id += cur.read_varint()
            tf = cur.read_varint()
            positions = []
            pos = 0
            for _ in range(tf):
                pos += cur.read_varint()
                positions.append(pos)
            plist.append((doc_id, positions))
        seg.terms[(fname, token)] = plist

    stored_path = os.path.join(directory, seg_id + ".stored")
    with open(stored_path, "rb") as fh:
        sdata = fh.read()
    if sdata[:4] != STORED_MAGIC:
        raise ValueError("bad stored file magic for segment %s" % seg_id)
    scur = ByteCursor(sdata, 4)
    if scur.read_u32() != FORMAT_VERSION:
        raise ValueError("unsupported stored format version")
    n_stored = scur.read_varint()
    for _ in range(n_stored):
        length = scur.read_varint()
        seg.stored.append(scur.read_bytes(length))
    return seg
