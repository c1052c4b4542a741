import time

import pytest
from fastapi.testclient import TestClient

from blosen.config import ServiceConfig, load_config
from blosen.crawler import FixtureFetcher
from blosen.docmodel import BlogPostDocument
from blosen.pipeline import index_documents
from blosen.service import COOKIE_NAME, create_app


def corpus():
    docs = []
    contents = {
        "espresso": "Espresso and grinder talk with a recipe for cooking milk foam.",
        "travelog": "A travel trip itinerary through coffee farms and tourism spots.",
        "budget": "Keeping the coffee budget low with savings on beans.",
    }
    for i, (slug, content) in enumerate(contents.items()):
        import datetime as dt

        docs.append(BlogPostDocument(
            post_url="http://b.example/2012/05/%s.html" % slug,
            post_title=slug,
            post_content=content,
            post_date=dt.date(2012, 5, i + 1),
        ))
    return docs


@pytest.fixture
def client(tmp_path, site_manifest):
    config = ServiceConfig(
        index_dir=str(tmp_path / "index"),
        log_file=str(tmp_path / "searches.jsonl"),
    )
    index_documents(corpus(), config.index_dir)
    app = create_app(config, fetcher=FixtureFetcher(site_manifest))
    with TestClient(app) as c:
        yield c


def test_search_traditional(client):
    resp = client.get("/search", params={"q": "coffee"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["total"] == 2
    assert body["pages"] == [1]
    hit = body["hits"][0]
    for key in ("link", "snippet", "date", "categories", "keywords", "author"):
        assert key in hit


def test_search_clustered(client):
    resp = client.get("/search", params={"q": "coffee", "view": "clustered"})
    assert resp.status_code == 200
    body = resp.json()
    assert "clusters" in body
    labels = [c["label"] for c in body["clusters"]]
    assert labels  # analyzer assigned travel/finance categories
    total_hits = sum(c["hit_count"] for c in body["clusters"])
    assert total_hits >= body["total"]


def test_missing_q_and_filters_is_400(client):
    resp = client.get("/search")
    assert resp.status_code == 400
    assert resp.json()["error"] == "empty_query"


def test_filter_only_request_ok(client):
    resp = client.get("/search", params={"year": "2012"})
    assert resp.status_code == 200
    assert resp.json()["total"] == 3


def test_page_out_of_range_400(client):
    resp = client.get("/search", params={"q": "coffee", "page": 999})
    assert resp.status_code == 400
    assert resp.json()["error"] == "page_out_of_range"


def test_unbalanced_quote_400(client):
    resp = client.get("/search", params={"q": '"broken'})
    assert resp.status_code == 400
    assert resp.json()["error"] == "unbalanced_quote"


def test_search_logged_once_per_request(client):
    log = client.app.state.log
    before = len(log.entries())
    client.get("/search", params={"q": "espresso"})
    assert len(log.entries()) == before + 1


def test_response_replay_identical(client):
    a = client.get("/search", params={"q": "coffee"}).content
    b = client.get("/search", params={"q": "coffee"}).content
    assert a == b


def test_recent_cookie_flow(client):
    resp = client.get("/analytics/recent")
    assert resp.status_code == 200
    assert resp.json()["recent"] == []
    assert COOKIE_NAME in client.cookies

    client.get("/search", params={"q": "espresso"})
    client.get("/search", params={"q": "budget"})
    resp = client.get("/analytics/recent")
    assert resp.json()["recent"] == ["budget", "espresso"]


def test_top_queries(client):
    client.get("/search", params={"q": "espresso"})
    client.get("/search", params={"q": "Espresso"})
    client.get("/search", params={"q": "budget"})
    resp = client.get("/analytics/top", params={"n": 2})
    assert resp.json()["top"] == [
        {"query": "espresso", "count": 2},
        {"query": "budget", "count": 1},
    ]


def test_whoami(client):
    resp = client.get("/whoami", headers={
        "User-Agent": "Mozilla/5.0 (X11; Linux x86_64) AppleWebKit/537.36 "
                      "(KHTML, like Gecko) Chrome/119.0.0.0 Safari/537.36"})
    body = resp.json()
    assert body["os"] == "Linux"
    assert body["browser"] == "Chrome"
    assert body["ip"]


def test_whoami_unknown_ua(client):
    body = client.get("/whoami", headers={"User-Agent": "weirdagent/1.0"}).json()
    assert body["os"] == "unknown"
    assert body["browser"] == "unknown"


def test_admin_crawl_job(client):
    resp = client.post("/admin/crawl", json={
        "root_url": "http://coffee.blogspot.example/", "max_pages": 50})
    assert resp.status_code == 200
    job_id = resp.json()["job_id"]
    for _ in range(100):
        status = client.get("/admin/jobs/%s" % job_id).json()
        if status["state"] in ("done", "failed"):
            break
        time.sleep(0.05)
    assert status["state"] == "done"
    assert status["visited"] == 9
    assert status["indexed"] == 6

    # newly indexed docs are searchable without restarting
    resp = client.get("/search", params={"q": "espresso host:blogger"})
    assert any("espresso-basics" in h["link"] for h in resp.json()["hits"])


def test_admin_bad_url(client):
    resp = client.post("/admin/crawl", json={"root_url": "notaurl"})
    assert resp.status_code == 400


def test_admin_unknown_job(client):
    assert client.get("/admin/jobs/nope").status_code == 404


def test_config_env_override(tmp_path, monkeypatch):
    cfg_file = tmp_path / "blosen.conf"
    cfg_file.write_text("page_size = 25\nindex_dir = /tmp/idx\n")
    monkeypatch.setenv("BLOSEN_PAGE_SIZE", "7")
    config = load_config(str(cfg_file))
    assert config.page_size == 7
    assert config.index_dir == "/tmp/idx"
