"""Query parsing.

Grammar: quoted segments are phrases; ``field:value`` and
``field:"multi word"`` bind to a known field or map to a filter; bare
words are terms over the default field set.  Unknown field prefixes are
treated as literal text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .tokenizer import tokenize

DEFAULT_FIELDS = ("post_title", "post_content", "keywords")

# query prefixes that bind terms/phrases to a single index field
BINDABLE = {
    "title": "post_title",
    "content": "post_content",
    "post_title": "post_title",
    "post_content": "post_content",
    "blog_title": "blog_title",
    "blog_name": "blog_name",
    "comments": "post_comments",
}

# query prefixes that become result filters
FILTER_NAMES = ("host", "blogtype", "year", "author", "category", "keyword", "url")


class QueryError(ValueError):
    pass


class EmptyQuery(QueryError):
    pass


class UnbalancedQuote(QueryError):
    pass


@dataclass(frozen=True)
class Filters:
    host: str | None = None
    year: int | None = None
    author: str | None = None
    category: str | None = None
    keyword: str | None = None
    title_contains: str | None = None
    url_contains: str | None = None

    def __bool__(self):
        return any(v is not None for v in self.__dict__.values())

    def items(self):
        return [(k, v) for k, v in self.__dict__.items() if v is not None]


@dataclass(frozen=True)
class Phrase:
    fields: tuple
    # (token, relative position) pairs; gaps mark removed stopwords
    tokens: tuple

    @property
    def token_texts(self):
        return tuple(t for t, _ in self.tokens)


@dataclass(frozen=True)
class Query:
    terms: tuple = ()       # (fields tuple, token) pairs
    phrases: tuple = ()     # Phrase objects
    filters: Filters = field(default_factory=Filters)

    def all_tokens(self):
        toks = [t for _, t in self.terms]
        for phrase in self.phrases:
            toks.extend(phrase.token_texts)
        return toks


_PART = re.compile(
    r'(?P<field>[A-Za-z_][A-Za-z0-9_]*):(?:"(?P<fq>[^"]*)"|(?P<fv>\S+))'
    r'|"(?P<quote>[^"]*)"'
    r"|(?P<word>\S+)"
)


def _phrase_tokens(text: str):
    toks = tokenize(text)
    if not toks:
        return ()
    origin = toks[0][1]
    return tuple((tok, pos - origin) for tok, pos in toks)


def _apply_filter(filters: Filters, name: str, value: str) -> Filters:
    value = value.strip().lower()
    if name in ("host", "blogtype"):
        return replace(filters, host=value)
    if name == "year":
        if not re.fullmatch(r"\d{4}", value):
            raise QueryError("year filter expects a 4-digit year, got %r" % value)
        return replace(filters, year=int(value))
    if name == "author":
        return replace(filters, author=value)
    if name == "category":
        return replace(filters, category=value)
    if name == "keyword":
        return replace(filters, keyword=value)
    if name == "url":
        return replace(filters, url_contains=value)
    raise AssertionError(name)


def parse_query(raw: str) -> Query:
    if raw.count('"') % 2:
        raise UnbalancedQuote(raw)
    raw = raw.strip()
    if not raw:
        raise EmptyQuery("query is empty")

    terms = []
    phrases = []
    filters = Filters()

    for match in _PART.finditer(raw):
        fname = match.group("field")
        if fname is not None:
            fname = fname.lower()
            value = match.group("fq") if match.group("fq") is not None else match.group("fv")
            if fname in FILTER_NAMES:
                filters = _apply_filter(filters, fname, value)
            elif fname in BINDABLE:
                target = (BINDABLE[fname],)
                if match.group("fq") is not None:
                    toks = _phrase_tokens(value)
                    if len(toks) > 1:
                        phrases.append(Phrase(target, toks))
                    elif toks:
                        terms.append((target, toks[0][0]))
                else:
                    for tok, _ in tokenize(value):
                        terms.append((target, tok))
            else:
                # unknown prefix: the whole chunk is literal text
                for tok, _ in tokenize(match.group(0)):
                    terms.append((DEFAULT_FIELDS, tok))
        elif match.group("quote") is not None:
            toks = _phrase_tokens(match.group("quote"))
            if len(toks) > 1:
                phrases.append(Phrase(DEFAULT_FIELDS, toks))
            elif toks:
                terms.append((DEFAULT_FIELDS, toks[0][0]))
        else:
            for tok, _ in tokenize(match.group("word")):
                terms.append((DEFAULT_FIELDS, tok))

    if not terms and not phrases and not filters:
        raise EmptyQuery("query has no terms, phrases, or filters")
    return Query(terms=tuple(terms), phrases=tuple(phrases), filters=filters)
