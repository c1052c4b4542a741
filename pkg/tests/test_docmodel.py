import datetime as dt

import pytest

from blosen.docmodel import (
    BlogHost,
    BlogPostDocument,
    DEFAULT_SCHEMA,
    DOCUMENT_FIELDS,
    MalformedDocument,
    from_canonical_json,
    parse_date,
    to_canonical_json,
)


def make_doc(**overrides):
    base = dict(
        post_url="http://b.example/2012/05/post.html",
        blog_url="http://b.example/",
        blog_title="A Blog",
        blog_name="A Blog",
        generator=BlogHost.BLOGGER,
        post_title="A post",
        post_date=dt.date(2012, 5, 1),
        post_content="some content here",
        post_author="Jo",
        post_comments=("nice",),
        categories=("Food",),
        keywords=("coffee",),
    )
    base.update(overrides)
    return BlogPostDocument(**base)


def test_schema_has_twelve_fields():
    assert len(DOCUMENT_FIELDS) == 12
    assert len(DEFAULT_SCHEMA) == 12


def test_empty_comments_serializes_as_empty_list():
    doc = make_doc(post_comments=())
    assert '"post_comments":[]' in to_canonical_json(doc)


def test_round_trip_identity():
    doc = make_doc()
    assert from_canonical_json(to_canonical_json(doc)) == doc


def test_construction_order_irrelevant_to_bytes():
    a = make_doc()
    b = BlogPostDocument(
        keywords=("coffee",),
        categories=("Food",),
        post_comments=("nice",),
        post_author="Jo",
        post_content="some content here",
        post_date=dt.date(2012, 5, 1),
        post_title="A post",
        generator=BlogHost.BLOGGER,
        blog_name="A Blog",
        blog_title="A Blog",
        blog_url="http://b.example/",
        post_url="http://b.example/2012/05/post.html",
    )
    assert to_canonical_json(a).encode() == to_canonical_json(b).encode()


def test_missing_post_url_rejected():
    with pytest.raises(MalformedDocument, match="post_url"):
        from_canonical_json("{}")


def test_relative_post_url_rejected():
    with pytest.raises(MalformedDocument, match="post_url"):
        BlogPostDocument(post_url="2012/05/post.html")


def test_invalid_month_rejected():
    with pytest.raises(MalformedDocument, match="post_date"):
        from_canonical_json(
            '{"post_url": "http://b.example/p", "post_date": "2012-13-01"}'
        )


def test_labels_normalized_and_deduped():
    doc = make_doc(categories=("  Food ", "food", "Hot  Drinks"), keywords=("X", "x"))
    assert doc.categories == ("food", "hot drinks")
    assert doc.keywords == ("x",)


def test_year_extraction():
    assert make_doc().year == 2012
    assert make_doc(post_date=None).year is None


@pytest.mark.parametrize("raw,expected", [
    ("2012-05-14T09:30:00+05:30", dt.date(2012, 5, 14)),
    ("May 14, 2012", dt.date(2012, 5, 14)),
    ("Monday, May 14, 2012", dt.date(2012, 5, 14)),
    ("14 May 2012", dt.date(2012, 5, 14)),
    ("not a date", None),
    ("", None),
])
def test_parse_date(raw, expected):
    assert parse_date(raw) == expected
