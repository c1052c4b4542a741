"""Content analysis: categories and keywords for a post's text.

The hosted content-analysis service the original pipeline relied on is
gone, so analysis is a local, pluggable step.  The default implementation
assigns categories from a trigger-term taxonomy and extracts keywords by
tf-idf against corpus document frequencies.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

from .docmodel import normalize_label
from .tokenizer import tokens_only


@dataclass(frozen=True)
class Taxonomy:
    """Map of category label -> set of lowercase trigger terms."""

    triggers: dict = field(default_factory=dict)

    def __post_init__(self):
        for label, terms in self.triggers.items():
            if not terms:
                raise ValueError("category %r has no trigger terms" % label)

    @property
    def labels(self):
        return sorted(self.triggers)


def load_taxonomy(path=None) -> Taxonomy:
    """Parse the taxonomy file format: ``label: term, term, ...``."""
    if path is None:
        text = resources.files("blosen").joinpath("data/taxonomy.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    triggers = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        label, _, terms = line.partition(":")
        label = normalize_label(label)
        triggers[label] = {normalize_label(t) for t in terms.split(",") if t.strip()}
    return Taxonomy(triggers)


@dataclass(frozen=True)
class CorpusStats:
    """Document-frequency snapshot used for idf in keyword extraction."""

    total_docs: int
    doc_freq: dict

    @classmethod
    def from_texts(cls, texts) -> "CorpusStats":
        df = Counter()
        n = 0
        for text in texts:
            n += 1
            df.update(set(tokens_only(text)))
        return cls(total_docs=n, doc_freq=dict(df))


def extract_keywords(text: str, stats: CorpusStats, k: int) -> list[tuple[str, float]]:
    """Top-k terms by tf-idf, ties broken lexicographically."""
    if k < 1:
        raise ValueError("k must be >= 1")
    tf = Counter(tokens_only(text))
    if not tf:
        return []
    n = max(stats.total_docs, 1)
    scored = []
    for term, count in tf.items():
        df = stats.doc_freq.get(term, 0)
        idf = math.log((n + 1) / (df + 1)) + 1.0
        scored.append((term, count * idf))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[:k]


def assign_categories(text: str, taxonomy: Taxonomy, max_categories: int) -> list[str]:
    """Categories ranked by trigger-term hit count; zero-hit labels omitted."""
    if max_categories < 1:
        raise ValueError("max_categories must be >= 1")
    counts = Counter(tokens_only(text, remove_stopwords=False))
    hits = []
    for label, terms in taxonomy.triggers.items():
        score = sum(counts.get(term, 0) for term in terms)
        if score > 0:
            hits.append((label, score))
    hits.sort(key=lambda item: (-item[1], item[0]))
    return [label for label, _ in hits[:max_categories]]


class ContentAnalyzer:
    """Default pluggable analyzer: taxonomy categories + tf-idf keywords."""

    def __init__(self, taxonomy: Taxonomy | None = None, max_categories: int = 3,
                 max_keywords: int = 8):
        self.taxonomy = taxonomy or load_taxonomy()
        self.max_categories = max_categories
        self.max_keywords = max_keywords

    def analyze(self, text: str, stats: CorpusStats):
        categories = assign_categories(text, self.taxonomy, self.max_categories)
        keywords = [t for t, _ in extract_keywords(text, stats, self.max_keywords)] if text.strip() else []
        return categories, keywords
