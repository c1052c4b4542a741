"""Canonical document model shared by every other module.

A blog post is represented by ten extracted elements plus the
analyzer-derived ``categories`` and ``keywords`` lists.  Documents are
immutable value objects and serialize to a deterministic canonical JSON
form (one document per line in corpus files).
"""

from __future__ import annotations

import datetime as _dt
import enum
import json
import re
from dataclasses import dataclass, field, replace
from urllib.parse import urlparse


class MalformedDocument(ValueError):
    """Raised when a document fails validation; message names the field."""


class BlogHost(enum.Enum):
    BLOGGER = "blogger"
    WORDPRESS = "wordpress"
    UNKNOWN = "unknown"


# The ten extracted blog elements plus the two analyzer outputs.
DOCUMENT_FIELDS = (
    "blog_url",
    "blog_title",
    "blog_name",
    "generator",
    "post_title",
    "post_url",
    "post_date",
    "post_content",
    "post_author",
    "post_comments",
    "categories",
    "keywords",
)

_WS = re.compile(r"\s+")


def normalize_label(label: str) -> str:
    """Lowercase, trim and collapse internal whitespace of a label."""
    return _WS.sub(" ", label.strip().lower())


def _dedup(items) -> tuple:
    seen = set()
    out = []
    for item in items:
        if item and item not in seen:
            seen.add(item)
            out.append(item)
    return tuple(out)


@dataclass(frozen=True)
class BlogPostDocument:
    post_url: str
    blog_url: str = ""
    blog_title: str = ""
    blog_name: str = ""
    generator: BlogHost = BlogHost.UNKNOWN
    post_title: str = ""
    post_date: _dt.date | None = None
    post_content: str = ""
    post_author: str = ""
    post_comments: tuple = ()
    categories: tuple = ()
    keywords: tuple = ()

    def __post_init__(self):
        if not self.post_url:
            raise MalformedDocument("post_url")
        parsed = urlparse(self.post_url)
        if not parsed.scheme or not parsed.netloc:
            raise MalformedDocument("post_url")
        object.__setattr__(self, "post_comments", tuple(self.post_comments))
        object.__setattr__(
            self, "categories", _dedup(normalize_label(c) for c in self.categories)
        )
        object.__setattr__(
            self, "keywords", _dedup(normalize_label(k) for k in self.keywords)
        )

    @property
    def year(self) -> int | None:
        return self.post_date.year if self.post_date else None

    def with_analysis(self, categories, keywords) -> "BlogPostDocument":
        return replace(self, categories=tuple(categories), keywords=tuple(keywords))


def to_canonical_json(doc: BlogPostDocument) -> str:
    """Serialize to deterministic JSON (sorted keys, no extra whitespace)."""
    payload = {
        "blog_url": doc.blog_url,
        "blog_title": doc.blog_title,
        "blog_name": doc.blog_name,
        "generator": doc.generator.value,
        "post_title": doc.post_title,
        "post_url": doc.post_url,
        "post_date": doc.post_date.isoformat() if doc.post_date else None,
        "post_content": doc.post_content,
        "post_author": doc.post_author,
        "post_comments": list(doc.post_comments),
        "categories": list(doc.categories),
        "keywords": list(doc.keywords),
    }
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def from_canonical_json(text: str) -> BlogPostDocument:
    """Parse and validate a canonical JSON document."""
    data = json.loads(text)
    if not isinstance(data, dict):
        raise MalformedDocument("document")
    post_url = data.get("post_url")
    if not post_url:
        raise MalformedDocument("post_url")

    raw_date = data.get("post_date")
    post_date = None
    if raw_date:
        try:
            post_date = _dt.date.fromisoformat(raw_date)
        except ValueError:
            raise MalformedDocument("post_date") from None

    generator = BlogHost.UNKNOWN
    if data.get("generator"):
        try:
            generator = BlogHost(data["generator"])
        except ValueError:
            raise MalformedDocument("generator") from None

    return BlogPostDocument(
        post_url=post_url,
        blog_url=data.get("blog_url", ""),
        blog_title=data.get("blog_title", ""),
        blog_name=data.get("blog_name", ""),
        generator=generator,
        post_title=data.get("post_title", ""),
        post_date=post_date,
        post_content=data.get("post_content", ""),
        post_author=data.get("post_author", ""),
        post_comments=tuple(data.get("post_comments", ())),
        categories=tuple(data.get("categories", ())),
        keywords=tuple(data.get("keywords", ())),
    )


def parse_date(text: str) -> _dt.date | None:
    """Best-effort date normalization to a calendar date.

    Returns None when the text cannot be interpreted; the document keeps
    an absent date rather than being rejected.
    """
    text = text.strip()
    if not text:
        return None
    # ISO timestamps such as 2012-05-14T10:30:00+05:30
    iso = re.match(r"(\d{4})-(\d{2})-(\d{2})", text)
    if iso:
        try:
            return _dt.date(int(iso.group(1)), int(iso.group(2)), int(iso.group(3)))
        except ValueError:
            return None
    for fmt in (
        "%B %d, %Y",
        "%b %d, %Y",
        "%d %B %Y",
        "%d %b %Y",
        "%A, %B %d, %Y",
        "%m/%d/%Y",
        "%Y/%m/%d",
    ):
        try:
            return _dt.datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    return None


@dataclass(frozen=True)
class FieldSpec:
    """Index schema entry for one document field."""

    name: str
    stored: bool = True
    indexed: bool = True
    tokenized: bool = True

    def __post_init__(self):
        if not (self.stored or self.indexed):
            raise ValueError("field %r is neither stored nor indexed" % self.name)


# Default schema: every field stored; text fields tokenized, identity
# fields (urls, generator, year) indexed as single exact terms.
DEFAULT_SCHEMA = (
    FieldSpec("blog_url", tokenized=False),
    FieldSpec("blog_title"),
    FieldSpec("blog_name"),
    FieldSpec("generator", tokenized=False),
    FieldSpec("post_title"),
    FieldSpec("post_url", tokenized=False),
    FieldSpec("post_year", tokenized=False),
    FieldSpec("post_content"),
    FieldSpec("post_author"),
    FieldSpec("post_comments"),
    FieldSpec("categories"),
    FieldSpec("keywords"),
)


def indexable_fields(doc: BlogPostDocument) -> dict:
    """Map schema field name -> list of raw values to index."""
    return {
        "blog_url": [doc.blog_url] if doc.blog_url else [],
        "blog_title": [doc.blog_title],
        "blog_name": [doc.blog_name],
        "generator": [doc.generator.value],
        "post_title": [doc.post_title],
        "post_url": [doc.post_url],
        "post_year": [str(doc.year)] if doc.year else [],
        "post_content": [doc.post_content],
        "post_author": [doc.post_author],
        # comments are display data; indexed as one concatenated field
        "post_comments": [" ".join(doc.post_comments)] if doc.post_comments else [],
        "categories": list(doc.categories),
        "keywords": list(doc.keywords),
    }
