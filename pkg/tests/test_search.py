import datetime as dt
import random

import pytest

from blosen.docmodel import BlogHost, BlogPostDocument
from blosen.query import DEFAULT_FIELDS, Filters, Phrase, Query, parse_query
from blosen.search import (
    PageOutOfRange,
    execute,
    make_snippet,
    phrase_match,
    score,
)

from oracles import (
    brute_force_phrase,
    naive_score,
    random_corpus,
    random_query,
)


def doc(slug, content, title="title", year=2012, **kw):
    return BlogPostDocument(
        post_url="http://b.example/%d/05/%s.html" % (year, slug),
        post_title=title,
        post_content=content,
        post_date=dt.date(year, 5, 1),
        **kw,
    )


def test_no_match_empty_page(make_index):
    _, reader = make_index([doc("a", "alpha")])
    page = execute(parse_query("zebra"), reader)
    assert page.total == 0
    assert page.hits == ()
    assert page.total_pages == 0


def test_higher_tf_ranks_first_when_idf_equal(make_index):
    docs = [
        doc("a", "coffee here", title="x"),
        doc("b", "nothing relevant", title="y"),
        doc("c", "coffee coffee coffee talk", title="z"),
    ]
    _, reader = make_index(docs)
    page = execute(parse_query("coffee"), reader)
    nums = [h.doc_number for h in page.hits]
    # oracle: naive BM25 over the 3 docs
    q = parse_query("coffee")
    by_num = dict(enumerate(docs))
    expected = sorted((n for n in (0, 2)),
                      key=lambda n: (-naive_score(q, n, by_num), n))
    assert nums == expected
    assert nums[0] == 2


def test_year_filter(make_index):
    docs = [doc("a", "x", year=2011), doc("b", "x", year=2012), doc("c", "x", year=2012)]
    _, reader = make_index(docs)
    page = execute(parse_query("x year:2012"), reader)
    assert sorted(h.doc_number for h in page.hits) == [1, 2]


def test_filter_only_query_scores_zero_doc_order(make_index):
    docs = [doc("a", "one"), doc("b", "two"), doc("c", "three")]
    _, reader = make_index(docs)
    page = execute(Query(filters=Filters(year=2012)), reader)
    assert [h.doc_number for h in page.hits] == [0, 1, 2]
    assert all(h.score == 0.0 for h in page.hits)


def test_score_matches_naive_oracle_single_doc(make_index):
    d = doc("a", "espresso grind espresso")
    _, reader = make_index([d])
    q = parse_query("espresso")
    assert score(q, 0, reader) == pytest.approx(naive_score(q, 0, {0: d}))


def test_score_reacts_to_tf_and_length_like_oracle(make_index):
    base = "espresso grind tamp"
    docs = [doc("a", base), doc("b", base + " " + base)]
    _, reader = make_index(docs)
    q = parse_query("espresso")
    by_num = dict(enumerate(docs))
    for n in (0, 1):
        assert score(q, n, reader) == pytest.approx(naive_score(q, n, by_num))


def test_phrase_match_order_matters(make_index):
    docs = [doc("a", "blog search engine"), doc("b", "search blog")]
    _, reader = make_index(docs)
    assert phrase_match(reader, "post_content", ["blog", "search"]) == [0]


def test_phrase_match_brute_force_random(make_index):
    rng = random.Random(11)
    docs = random_corpus(rng, 50)
    _, reader = make_index(docs)
    by_num = dict(enumerate(docs))
    for _ in range(30):
        toks = [(rng.choice(("coffee", "garden", "index", "water", "grind")), i)
                for i in range(rng.randint(2, 3))]
        got = phrase_match(reader, "post_content", toks)
        assert got == brute_force_phrase(by_num, "post_content", toks)


def test_conjunctive_semantics_random(make_index):
    rng = random.Random(23)
    docs = random_corpus(rng, 40)
    _, reader = make_index(docs)
    by_num = dict(enumerate(docs))
    from blosen.search import match_candidates

    for _ in range(25):
        q = random_query(rng)
        got = set(match_candidates(q, reader))
        expected = set(by_num)
        for fields, token in q.terms:
            matching = {n for n in by_num
                        if any(naive_score(Query(terms=(((f,), token),)), n, by_num) > 0
                               for f in fields)}
            expected &= matching
        for phrase in q.phrases:
            matching = set()
            for f in phrase.fields:
                matching |= set(brute_force_phrase(by_num, f, list(phrase.tokens)))
            expected &= matching
        if q.filters.year is not None:
            expected &= {n for n in by_num if by_num[n].year == q.filters.year}
        assert got == expected


def test_pagination_consistency(make_index):
    rng = random.Random(5)
    docs = random_corpus(rng, 30)
    _, reader = make_index(docs)
    q = parse_query("coffee")
    full = execute(q, reader, page=1, size=1000)
    collected = []
    page_no = 1
    while True:
        try:
            page = execute(q, reader, page=page_no, size=4)
        except PageOutOfRange:
            break
        collected.extend(h.doc_number for h in page.hits)
        page_no += 1
        if page_no > 50:
            break
    assert collected == [h.doc_number for h in full.hits]
    assert len(set(collected)) == len(collected)


def test_page_out_of_range(make_index):
    _, reader = make_index([doc("a", "coffee")])
    with pytest.raises(PageOutOfRange):
        execute(parse_query("coffee"), reader, page=2, size=10)
    with pytest.raises(PageOutOfRange):
        execute(parse_query("coffee"), reader, page=0, size=10)
    # empty result: page 1 allowed
    assert execute(parse_query("zebra"), reader, page=1).total == 0
    with pytest.raises(PageOutOfRange):
        execute(parse_query("zebra"), reader, page=2)


def test_deterministic_serialization(make_index):
    rng = random.Random(9)
    docs = random_corpus(rng, 20)
    _, reader = make_index(docs)
    import json

    q = parse_query("coffee garden")
    a = json.dumps(execute(q, reader).to_payload(), sort_keys=True)
    b = json.dumps(execute(q, reader).to_payload(), sort_keys=True)
    assert a == b


# -- snippets -------------------------------------------------------------

def test_snippet_short_content_whole():
    d = doc("a", "espresso is short")
    snip = make_snippet(d, parse_query("espresso"), max_len=100)
    assert snip == "⟦espresso⟧ is short"


def test_snippet_match_at_start():
    content = "espresso " + "filler " * 50
    d = doc("a", content.strip())
    snip = make_snippet(d, parse_query("espresso"), max_len=40)
    assert snip.startswith("⟦espresso⟧")


def test_snippet_window_centered():
    # hand-computed: match "needle" at chars 60..66 of a 120-char text,
    # max_len 30 -> window [48, 78)
    content = ("x" * 59 + " needle " + "y" * 53)
    d = doc("a", content)
    snip = make_snippet(d, parse_query("needle"), max_len=30)
    plain = snip.replace("⟦", "").replace("⟧", "")
    assert plain == content[48:78]
    assert "⟦needle⟧" in snip


def test_snippet_no_content_match_leading_window():
    d = doc("a", "plain body text", title="espresso")
    snip = make_snippet(d, parse_query("espresso"), max_len=10)
    assert snip == "plain body"
