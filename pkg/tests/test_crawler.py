import pytest

from blosen.crawler import (
    CrawlPlan,
    FixtureFetcher,
    RootUnreachable,
    crawl_blog,
    extract_archive_links,
    extract_post_links,
)

COFFEE_ROOT = "http://coffee.blogspot.example/"
COFFEE_ARCHIVES = {
    "http://coffee.blogspot.example/2012_05_01_archive.html",
    "http://coffee.blogspot.example/2012_06_01_archive.html",
}
COFFEE_POSTS = {
    "http://coffee.blogspot.example/2012/05/espresso-basics.html",
    "http://coffee.blogspot.example/2012/05/grinder-guide.html",
    "http://coffee.blogspot.example/2012/05/latte-art.html",
    "http://coffee.blogspot.example/2012/06/cold-brew.html",
    "http://coffee.blogspot.example/2012/06/bean-origins.html",
    "http://coffee.blogspot.example/2012/06/coffee-budget.html",
}
GARDEN_ROOT = "http://gardennotes.example/"
GARDEN_POSTS = {
    "http://gardennotes.example/2013/07/04/tomato-care/",
    "http://gardennotes.example/2013/07/09/compost-basics/",
    "http://gardennotes.example/2013/07/15/herb-spiral/",
    "http://gardennotes.example/2013/07/22/rainwater-harvest/",
}


@pytest.fixture
def fetcher(site_manifest):
    return FixtureFetcher(site_manifest)


def test_extract_archive_links_empty():
    assert extract_archive_links("<html><body>no anchors</body></html>", "http://b.example/") == []


def test_extract_archive_links_from_fixture(fetcher):
    html = fetcher.fetch(COFFEE_ROOT).text()
    assert set(extract_archive_links(html, COFFEE_ROOT)) == COFFEE_ARCHIVES


def test_archive_links_relative_resolution():
    html = '<div class="archive"><a href="2012/05/">May</a></div>'
    assert extract_archive_links(html, "http://b.example/") == ["http://b.example/2012/05/"]


def test_extract_post_links_from_fixture(fetcher):
    html = fetcher.fetch("http://coffee.blogspot.example/2012_05_01_archive.html").text()
    urls = extract_post_links(html, COFFEE_ROOT)
    assert urls == [
        "http://coffee.blogspot.example/2012/05/espresso-basics.html",
        "http://coffee.blogspot.example/2012/05/grinder-guide.html",
        "http://coffee.blogspot.example/2012/05/latte-art.html",
    ]


def test_post_links_off_host_filtered():
    html = '<a href="http://other.example/2012/05/post.html" rel="bookmark">x</a>'
    assert extract_post_links(html, "http://b.example/", same_host_only=True) == []


def test_post_links_deduplicated():
    html = ('<a href="/2012/05/p.html">a</a>'
            '<a href="/2012/05/p.html">b</a>')
    assert extract_post_links(html, "http://b.example/") == ["http://b.example/2012/05/p.html"]


def test_crawl_coffee_fixture(fetcher):
    result = crawl_blog(CrawlPlan(root_url=COFFEE_ROOT), fetcher)
    assert {url for url, _ in result.post_pages} == COFFEE_POSTS
    # root + 2 archives + 6 posts, hand-counted from the fixture
    assert result.visited_count == 9


def test_crawl_garden_fixture(fetcher):
    result = crawl_blog(CrawlPlan(root_url=GARDEN_ROOT), fetcher)
    assert {url for url, _ in result.post_pages} == GARDEN_POSTS
    assert result.visited_count == 6


def test_crawl_depth_never_exceeds_three(fetcher):
    crawl_blog(CrawlPlan(root_url=COFFEE_ROOT), fetcher)
    allowed = {COFFEE_ROOT} | COFFEE_ARCHIVES | COFFEE_POSTS
    assert set(fetcher.fetched_urls) <= allowed


def test_no_url_fetched_twice(fetcher):
    crawl_blog(CrawlPlan(root_url=COFFEE_ROOT), fetcher)
    assert len(fetcher.fetched_urls) == len(set(fetcher.fetched_urls))


def test_max_pages_one_visits_only_root(fetcher):
    result = crawl_blog(CrawlPlan(root_url=COFFEE_ROOT, max_pages=1), fetcher)
    assert result.visited_count == 1
    assert result.post_pages == []


def test_visited_count_bounded_by_max_pages(fetcher):
    result = crawl_blog(CrawlPlan(root_url=COFFEE_ROOT, max_pages=4), fetcher)
    assert result.visited_count <= 4


def test_root_unreachable(fetcher):
    with pytest.raises(RootUnreachable):
        crawl_blog(CrawlPlan(root_url="http://missing.example/"), fetcher)


def test_link_extraction_pure(fetcher):
    html = fetcher.fetch(COFFEE_ROOT).text()
    assert extract_archive_links(html, COFFEE_ROOT) == extract_archive_links(html, COFFEE_ROOT)


def test_max_pages_validation():
    with pytest.raises(ValueError):
        CrawlPlan(root_url="http://b.example/", max_pages=0)
