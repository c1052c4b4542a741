"""HTTP JSON API: search, clustered search, analytics, admin crawl jobs.

The service is a single process.  Readers are snapshots cached per
manifest version, so admin indexing never blocks searches.  Admin
routes are expected to be reachable on localhost only (bind address in
ServiceConfig).
"""

from __future__ import annotations

import os
import queue
import secrets
import threading
from dataclasses import replace

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .activity_log import ActivityLog, make_entry, parse_user_agent
from .analyzer import ContentAnalyzer, load_taxonomy
from .cluster import cluster_results, tree_payload
from .config import ServiceConfig
from .crawler import CrawlPlan, HttpFetcher, RootUnreachable
from .index import IndexReader
from .index.manifest import manifest_path
from .parser import load_rule_tables
from .pipeline import crawl_and_index
from .query import EmptyQuery, Filters, QueryError, UnbalancedQuote, parse_query, Query
from .search import PageOutOfRange, execute

COOKIE_NAME = "blosen_user"
JOB_QUEUE_DEPTH = 4


class ReaderCache:
    """Reopen the index only when the manifest changes."""

    def __init__(self, index_dir: str):
        self.index_dir = index_dir
        self._lock = threading.Lock()
        self._reader: IndexReader | None = None
        self._stamp = None

    def get(self) -> IndexReader:
        path = manifest_path(self.index_dir)
        try:
            stat = os.stat(path)
            stamp = (stat.st_mtime_ns, stat.st_size)
        except FileNotFoundError:
            stamp = None
        with self._lock:
            if self._reader is None or stamp != self._stamp:
                self._reader = IndexReader.open(self.index_dir)
                self._stamp = stamp
            return self._reader


class JobRunner:
    """Background crawl jobs with a bounded queue."""

    def __init__(self, config: ServiceConfig, analyzer, rule_tables, fetcher=None):
        self.config = config
        self.analyzer = analyzer
        self.rule_tables = rule_tables
        self.fetcher = fetcher
        self.jobs: dict[str, dict] = {}
        self._queue: queue.Queue = queue.Queue(maxsize=JOB_QUEUE_DEPTH)
        self._thread = threading.Thread(target=self._worker, daemon=True)
        self._thread.start()

    def submit(self, root_url: str, max_pages: int) -> str:
        job_id = secrets.token_hex(8)
        self.jobs[job_id] = {"id": job_id, "state": "queued", "root_url": root_url}
        self._queue.put((job_id, root_url, max_pages))
        return job_id

    def _worker(self):
        while True:
            job_id, root_url, max_pages = self._queue.get()
            job = self.jobs[job_id]
            job["state"] = "running"
            try:
                plan = CrawlPlan(
                    root_url=root_url,
                    max_pages=max_pages,
                    per_request_delay=self.config.crawl_delay,
                )
                fetcher = self.fetcher or HttpFetcher()
                report = crawl_and_index(
                    plan, fetcher, self.config.index_dir,
                    analyzer=self.analyzer, rule_tables=self.rule_tables,
                    delay=self.fetcher is None,
                )
                job.update(
                    state="done",
                    visited=report.visited,
                    parsed=report.parsed,
                    indexed=report.indexed,
                    skipped=[list(s) for s in report.skipped],
                )
            except (RootUnreachable, Exception) as exc:  # job errors land in status
                job.update(state="failed", error=str(exc))


def _error(status: int, code: str, message: str = "") -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": code, "message": message or code})


def _merge_filters(query: Query, params: dict) -> Query:
    updates = {}
    mapping = {
        "host": "host", "author": "author", "category": "category",
        "keyword": "keyword", "title": "title_contains", "url": "url_contains",
    }
    for param, attr in mapping.items():
        value = params.get(param)
        if value:
            updates[attr] = value.strip().lower()
    year = params.get("year")
    if year:
        updates["year"] = int(year)
    if not updates:
        return query
    return replace(query, filters=replace(query.filters, **updates))


def create_app(config: ServiceConfig, fetcher=None) -> FastAPI:
    """Build the application; ``fetcher`` override makes tests hermetic."""
    app = FastAPI(title="BloSen", version="0.1.0")
    readers = ReaderCache(config.index_dir)
    log = ActivityLog(config.log_file)
    log_lock = threading.Lock()
    taxonomy = load_taxonomy(config.taxonomy_path) if config.taxonomy_path else None
    analyzer = ContentAnalyzer(taxonomy) if taxonomy else ContentAnalyzer()
    rule_tables = load_rule_tables(config.rule_table_path) if config.rule_table_path else None
    jobs = JobRunner(config, analyzer, rule_tables, fetcher=fetcher)
    app.state.jobs = jobs
    app.state.log = log

    def user_token(request: Request, response: Response) -> str:
        token = request.cookies.get(COOKIE_NAME)
        if not token:
            token = secrets.token_urlsafe(16)  # 128 bits
            response.set_cookie(COOKIE_NAME, token, httponly=True)
        return token

    @app.get("/search")
    def search(request: Request, response: Response, q: str = "",
               view: str = "traditional", page: int = 1, size: int = 0,
               host: str = "", year: str = "", author: str = "",
               category: str = "", keyword: str = "", title: str = "",
               url: str = ""):
        size = size or config.page_size
        params = {"host": host, "year": year, "author": author,
                  "category": category, "keyword": keyword, "title": title,
                  "url": url}
        try:
            if q.strip():
                query = parse_query(q)
            else:
                query = Query()
            query = _merge_filters(query, params)
            if not query.terms and not query.phrases and not query.filters:
                raise EmptyQuery("supply q or at least one filter")
        except UnbalancedQuote:
            return _error(400, "unbalanced_quote")
        except EmptyQuery as exc:
            return _error(400, "empty_query", str(exc))
        except (QueryError, ValueError) as exc:
            return _error(400, "bad_query", str(exc))

        token = user_token(request, response)
        ua = request.headers.get("user-agent", "")
        ip = request.client.host if request.client else "unknown"
        raw = q.strip() or "&".join("%s=%s" % (k, v) for k, v in params.items() if v)
        with log_lock:
            log.record_search(make_entry(token, raw, ua, ip))

        reader = readers.get()
        try:
            result = execute(query, reader, page=page, size=size)
        except PageOutOfRange:
            return _error(400, "page_out_of_range")

        if view == "clustered":
            payload = tree_payload(cluster_results(result.hits))
            payload.update(total=result.total, page=result.page,
                           size=result.size, total_pages=result.total_pages,
                           pages=list(range(1, result.total_pages + 1)))
        else:
            payload = result.to_payload()
        return JSONResponse(payload, headers=dict(response.headers))

    @app.get("/analytics/recent")
    def analytics_recent(request: Request, response: Response, n: int = 10):
        token = user_token(request, response)
        items = log.recent_searches(token, max(n, 1))
        return JSONResponse({"recent": items}, headers=dict(response.headers))

    @app.get("/analytics/top")
    def analytics_top(n: int = 10):
        ranked = log.top_queries(max(n, 1))
        return {"top": [{"query": q_, "count": c} for q_, c in ranked]}

    @app.get("/whoami")
    def whoami(request: Request):
        ua = request.headers.get("user-agent", "")
        os_name, browser = parse_user_agent(ua)
        ip = request.client.host if request.client else "unknown"
        return {"os": os_name, "browser": browser, "ip": ip}

    @app.post("/admin/crawl")
    async def admin_crawl(request: Request):
        body = await request.json()
        root_url = (body.get("root_url") or "").strip()
        if not root_url.startswith(("http://", "https://")):
            return _error(400, "invalid_url", root_url)
        max_pages = int(body.get("max_pages") or config.crawl_max_pages)
        if max_pages < 1:
            return _error(400, "invalid_max_pages")
        job_id = jobs.submit(root_url, max_pages)
        return {"job_id": job_id}

    @app.get("/admin/jobs/{job_id}")
    def admin_job(job_id: str):
        job = jobs.jobs.get(job_id)
        if job is None:
            return _error(404, "unknown_job", job_id)
        return job

    if config.ui_dir and os.path.isdir(config.ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
