"""Text analysis chain used for both indexing and query processing.

Tokens are lowercased alphanumeric runs.  Stopword removal keeps the
original position numbering, so phrase matching treats a removed
stopword as a gap rather than collapsing its neighbours together.
"""

from __future__ import annotations

import re
from importlib import resources

_TOKEN = re.compile(r"[0-9a-z]+")


def _load_stopwords() -> frozenset:
    text = resources.files("blosen").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


STOPWORDS = _load_stopwords()


def tokenize(text: str, remove_stopwords: bool = True) -> list[tuple[str, int]]:
    """Return (token, position) pairs.

    Positions count every token before stopword removal, so gaps remain
    where stopwords were dropped.
    """
    out = []
    for pos, match in enumerate(_TOKEN.finditer(text.lower())):
        token = match.group()
        if remove_stopwords and token in STOPWORDS:
            continue
        out.append((token, pos))
    return out


def tokens_only(text: str, remove_stopwords: bool = True) -> list[str]:
    return [t for t, _ in tokenize(text, remove_stopwords)]
