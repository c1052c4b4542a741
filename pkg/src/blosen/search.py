"""Query execution: candidate matching, BM25 ranking, pagination, snippets.

Semantics are conjunctive: a document must match every term and phrase
(in at least one of its target fields) and every filter.  Ranking is
BM25 with k1=1.2, b=0.75, per-field length normalization, summed over
matched fields; ties break on ascending doc number.  The identical
formula is re-implemented naively in the test suite as the ranking
oracle, so any change here must be mirrored there.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .docmodel import BlogPostDocument
from .index import IndexReader
from .query import Query

BM25_K1 = 1.2
BM25_B = 0.75

SNIPPET_OPEN = "⟦"   # ⟦
SNIPPET_CLOSE = "⟧"  # ⟧
DEFAULT_SNIPPET_LEN = 160


class PageOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class Hit:
    doc_number: int
    score: float
    matched_fields: tuple
    snippet: str
    document: BlogPostDocument

    def display(self) -> dict:
        doc = self.document
        return {
            "doc_number": self.doc_number,
            "score": round(self.score, 6),
            "link": doc.post_url,
            "title": doc.post_title,
            "snippet": self.snippet,
            "date": doc.post_date.isoformat() if doc.post_date else None,
            "author": doc.post_author,
            "categories": list(doc.categories),
            "keywords": list(doc.keywords),
            "comment_count": len(doc.post_comments),
            "matched_fields": list(self.matched_fields),
        }


@dataclass(frozen=True)
class ResultPage:
    hits: tuple
    total: int
    page: int
    size: int

    @property
    def total_pages(self) -> int:
        return -(-self.total // self.size)

    def to_payload(self) -> dict:
        return {
            "hits": [h.display() for h in self.hits],
            "total": self.total,
            "page": self.page,
            "size": self.size,
            "total_pages": self.total_pages,
            "pages": list(range(1, self.total_pages + 1)),
        }


def idf(reader: IndexReader, field: str, token: str) -> float:
    df = reader.doc_frequency(field, token)
    n = reader.doc_count
    return math.log(1.0 + (n - df + 0.5) / (df + 0.5))


def score(query: Query, doc_number: int, reader: IndexReader) -> float:
    """BM25 score of one document; pure function of the reader snapshot."""
    total = 0.0
    occurrences = [(fields, tok) for fields, tok in query.terms]
    for phrase in query.phrases:
        occurrences.extend((phrase.fields, tok) for tok in phrase.token_texts)
    for fields, token in occurrences:
        for field in fields:
            tf = 0
            for num, freq, _pos in reader.postings(field, token):
                if num == doc_number:
                    tf = freq
                    break
            if not tf:
                continue
            avgdl = reader.avg_field_length(field)
            if avgdl <= 0:
                continue
            dl = reader.field_length(field, doc_number)
            norm = tf * (BM25_K1 + 1) / (tf + BM25_K1 * (1 - BM25_B + BM25_B * dl / avgdl))
            total += idf(reader, field, token) * norm
    return total


def _term_docs(reader: IndexReader, fields, token) -> dict:
    """doc number -> set of fields where the term occurs."""
    out = {}
    for field in fields:
        for num, _tf, _pos in reader.postings(field, token):
            out.setdefault(num, set()).add(field)
    return out


def phrase_match(reader: IndexReader, field: str, tokens) -> list[int]:
    """Docs where the tokens occur at the given relative positions.

    ``tokens`` is either a list of token strings (consecutive positions)
    or (token, offset) pairs; position gaps left by removed stopwords
    count as non-consecutive.
    """
    pairs = [t if isinstance(t, tuple) else (t, i) for i, t in enumerate(tokens)]
    if not pairs:
        return []
    first_tok, first_off = pairs[0]
    position_sets = []
    candidate = None
    for tok, _off in pairs:
        docs = {num: set(pos) for num, _tf, pos in reader.postings(field, tok)}
        position_sets.append(docs)
        keys = set(docs)
        candidate = keys if candidate is None else candidate & keys
    out = []
    for num in sorted(candidate or ()):
        starts = {p - first_off for p in position_sets[0][num]}
        for (tok, off), docs in zip(pairs[1:], position_sets[1:]):
            starts &= {p - off for p in docs[num]}
            if not starts:
                break
        if starts:
            out.append(num)
    return out


def _matches_filters(doc: BlogPostDocument, filters) -> bool:
    for name, value in filters.items():
        if name == "host":
            if doc.generator.value != value:
                return False
        elif name == "year":
            if doc.year != value:
                return False
        elif name == "author":
            if value not in doc.post_author.lower():
                return False
        elif name == "category":
            if value not in doc.categories:
                return False
        elif name == "keyword":
            if value not in doc.keywords:
                return False
        elif name == "title_contains":
            if value not in doc.post_title.lower():
                return False
        elif name == "url_contains":
            if value not in doc.post_url.lower():
                return False
    return True


def match_candidates(query: Query, reader: IndexReader):
    """Conjunctive candidate set; returns {doc number: matched fields}."""
    candidate_fields = None

    def intersect(doc_fields: dict):
        nonlocal candidate_fields
        if candidate_fields is None:
            candidate_fields = doc_fields
        else:
            merged = {}
            for num in candidate_fields.keys() & doc_fields.keys():
                merged[num] = candidate_fields[num] | doc_fields[num]
            candidate_fields = merged

    for fields, token in query.terms:
        intersect(_term_docs(reader, fields, token))
        if not candidate_fields:
            return {}
    for phrase in query.phrases:
        doc_fields = {}
        for field in phrase.fields:
            for num in phrase_match(reader, field, list(phrase.tokens)):
                doc_fields.setdefault(num, set()).add(field)
        intersect(doc_fields)
        if not candidate_fields:
            return {}

    if candidate_fields is None:
        # filter-only query: every live doc is a candidate
        candidate_fields = {num: set() for num in reader.live_doc_numbers()}

    if query.filters:
        candidate_fields = {
            num: flds
            for num, flds in candidate_fields.items()
            if _matches_filters(reader.stored_document(num), query.filters)
        }
    return candidate_fields


def execute(query: Query, reader: IndexReader, page: int = 1, size: int = 10,
            snippet_len: int = DEFAULT_SNIPPET_LEN) -> ResultPage:
    if size < 1:
        raise ValueError("page size must be >= 1")
    candidates = match_candidates(query, reader)
    scored = sorted(
        ((score(query, num, reader), num) for num in candidates),
        key=lambda item: (-item[0], item[1]),
    )
    total = len(scored)
    total_pages = -(-total // size)
    if total == 0:
        if page != 1:
            raise PageOutOfRange(page)
        return ResultPage(hits=(), total=0, page=1, size=size)
    if page < 1 or page > total_pages:
        raise PageOutOfRange(page)

    window = scored[(page - 1) * size : page * size]
    hits = []
    for s, num in window:
        doc = reader.stored_document(num)
        hits.append(Hit(
            doc_number=num,
            score=s,
            matched_fields=tuple(sorted(candidates[num])),
            snippet=make_snippet(doc, query, snippet_len),
            document=doc,
        ))
    return ResultPage(hits=tuple(hits), total=total, page=page, size=size)


def make_snippet(doc: BlogPostDocument, query: Query, max_len: int = DEFAULT_SNIPPET_LEN) -> str:
    """Window of post_content centered on the first match, matches marked."""
    content = doc.post_content
    tokens = sorted({t for t in query.all_tokens() if t}, key=len, reverse=True)
    if not tokens:
        window = content[:max_len]
        return window
    pattern = re.compile(
        r"\b(" + "|".join(re.escape(t) for t in tokens) + r")\b", re.IGNORECASE
    )
    match = pattern.search(content)
    if match is None:
        return content[:max_len]
    if len(content) <= max_len:
        start, end = 0, len(content)
    else:
        center = (match.start() + match.end()) // 2
        start = min(max(0, center - max_len // 2), len(content) - max_len)
        end = start + max_len
    window = content[start:end]
    return pattern.sub(lambda m: SNIPPET_OPEN + m.group(0) + SNIPPET_CLOSE, window)
