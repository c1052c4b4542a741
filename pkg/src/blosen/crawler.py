"""Selective three-level crawler: blog root -> archive pages -> posts.

Only archive links are followed from the root and only post permalinks
from archive pages, so depth never exceeds three.  Fetching goes through
the Fetcher interface; tests use a deterministic directory-backed
fetcher driven by a TSV manifest (url<TAB>relative-path).
"""

from __future__ import annotations

import re
import time
import urllib.robotparser
from dataclasses import dataclass, field
from urllib.parse import urljoin, urlparse

from .htmldom import parse_html

DEFAULT_USER_AGENT = "BloSenCrawler/0.1"
DEFAULT_DELAY_SECONDS = 0.5

# container class/id markers that flag an archive widget
ARCHIVE_CONTAINER_PATTERNS = ("archive", "blogarchive", "widget_archive")
_ARCHIVE_PATH = re.compile(r"/\d{4}(/\d{2})?/?$")
_BLOGGER_POST_PATH = re.compile(r"/\d{4}/\d{2}/[^/]+(\.html)?$")
_WORDPRESS_POST_PATH = re.compile(r"/\d{4}/\d{2}/\d{2}/[^/]+/?$")


class CrawlError(Exception):
    pass


class RootUnreachable(CrawlError):
    pass


@dataclass(frozen=True)
class FetchResult:
    status: int
    content_type: str
    body: bytes
    final_url: str

    @property
    def ok(self) -> bool:
        return 200 <= self.status < 300

    @property
    def is_html(self) -> bool:
        return "html" in self.content_type.lower()

    def text(self) -> str:
        return self.body.decode("utf-8", errors="replace")


class Fetcher:
    """Abstract page fetcher."""

    def fetch(self, url: str) -> FetchResult:
        raise NotImplementedError


class FixtureFetcher(Fetcher):
    """Deterministic fetcher over a directory of files.

    The manifest is TSV: ``url<TAB>relative-path`` per line.  Unknown
    URLs return 404.
    """

    def __init__(self, manifest_path: str):
        import os

        self._pages: dict[str, str] = {}
        base_dir = os.path.dirname(os.path.abspath(manifest_path))
        with open(manifest_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                url, _, rel_path = line.partition("\t")
                self._pages[url.strip()] = os.path.join(base_dir, rel_path.strip())
        self.fetch_count = 0
        self.fetched_urls: list[str] = []

    def __len__(self):
        return len(self._pages)

    def fetch(self, url: str) -> FetchResult:
        self.fetch_count += 1
        self.fetched_urls.append(url)
        path = self._pages.get(url)
        if path is None:
            return FetchResult(404, "text/plain", b"not found", url)
        with open(path, "rb") as fh:
            body = fh.read()
        content_type = "text/html" if path.endswith((".html", ".htm")) else "text/plain"
        return FetchResult(200, content_type, body, url)


class HttpFetcher(Fetcher):
    """Plain HTTP GET fetcher honoring robots.txt."""

    def __init__(self, user_agent: str = DEFAULT_USER_AGENT, timeout: float = 20.0):
        import requests

        self._session = requests.Session()
        self._session.headers["User-Agent"] = user_agent
        self.user_agent = user_agent
        self.timeout = timeout
        self._robots: dict[str, urllib.robotparser.RobotFileParser] = {}

    def _allowed(self, url: str) -> bool:
        origin = "{0.scheme}://{0.netloc}".format(urlparse(url))
        rp = self._robots.get(origin)
        if rp is None:
            rp = urllib.robotparser.RobotFileParser(origin + "/robots.txt")
            try:
                rp.read()
            except OSError:
                rp.allow_all = True
            self._robots[origin] = rp
        return rp.can_fetch(self.user_agent, url)

    def fetch(self, url: str) -> FetchResult:
        if not self._allowed(url):
            return FetchResult(403, "text/plain", b"disallowed by robots.txt", url)
        try:
            resp = self._session.get(url, timeout=self.timeout)
        except OSError as exc:
            return FetchResult(0, "text/plain", str(exc).encode(), url)
        return FetchResult(
            resp.status_code,
            resp.headers.get("Content-Type", ""),
            resp.content,
            resp.url,
        )


@dataclass(frozen=True)
class CrawlPlan:
    root_url: str
    max_pages: int = 200
    per_request_delay: float = DEFAULT_DELAY_SECONDS
    same_host_only: bool = True

    def __post_init__(self):
        if self.max_pages < 1:
            raise ValueError("max_pages must be >= 1")


@dataclass
class CrawlResult:
    post_pages: list = field(default_factory=list)  # (post_url, html text)
    visited_count: int = 0
    skipped: list = field(default_factory=list)  # (url, reason)


def _dedup_keep_order(urls):
    seen = set()
    out = []
    for url in urls:
        url = url.split("#", 1)[0]
        if url and url not in seen:
            seen.add(url)
            out.append(url)
    return out


def _anchor_urls(html: str, base_url: str):
    root = parse_html(html)
    for a in root.select("a[href]"):
        href = a.attrs.get("href", "").strip()
        if not href or href.startswith(("javascript:", "mailto:", "#")):
            continue
        yield urljoin(base_url, href), a


def extract_archive_links(root_html: str, base_url: str) -> list[str]:
    """Archive-page URLs from the blog root, document order, deduplicated.

    An anchor counts when it sits inside an archive widget container or
    its path looks like /YYYY/ or /YYYY/MM/.
    """
    out = []
    for url, anchor in _anchor_urls(root_html, base_url):
        in_container = False
        node = anchor.parent
        while node is not None:
            marker = ((node.attrs.get("class") or "") + " " + (node.attrs.get("id") or "")).lower()
            if any(pat in marker for pat in ARCHIVE_CONTAINER_PATTERNS):
                in_container = True
                break
            node = node.parent
        if in_container or _ARCHIVE_PATH.search(urlparse(url).path):
            out.append(url)
    return _dedup_keep_order(out)


def extract_post_links(archive_html: str, base_url: str, same_host_only: bool = True) -> list[str]:
    """Post permalink URLs from an archive page."""
    base_host = urlparse(base_url).netloc
    out = []
    for url, anchor in _anchor_urls(archive_html, base_url):
        if same_host_only and urlparse(url).netloc != base_host:
            continue
        path = urlparse(url).path
        if (
            anchor.attrs.get("rel", "").lower() == "bookmark"
            or _BLOGGER_POST_PATH.search(path)
            or _WORDPRESS_POST_PATH.search(path)
        ):
            out.append(url)
    return _dedup_keep_order(out)


def crawl_blog(plan: CrawlPlan, fetcher: Fetcher, delay: bool = False) -> CrawlResult:
    """Depth-first crawl: root, then each archive, then its posts.

    Individual archive/post failures are recorded in ``skipped``; only a
    failed root fetch is fatal.
    """
    result = CrawlResult()
    visited: set[str] = set()

    def budget_left() -> bool:
        return result.visited_count < plan.max_pages

    def visit(url: str) -> FetchResult | None:
        if url in visited or not budget_left():
            return None
        visited.add(url)
        if delay and result.visited_count > 0:
            time.sleep(plan.per_request_delay)
        res = fetcher.fetch(url)
        result.visited_count += 1
        return res

    root_res = visit(plan.root_url)
    if root_res is None or not root_res.ok or not root_res.is_html:
        raise RootUnreachable(plan.root_url)

    root_host = urlparse(root_res.final_url).netloc
    archives = extract_archive_links(root_res.text(), root_res.final_url)
    seen_posts: set[str] = set()

    for archive_url in archives:
        if plan.same_host_only and urlparse(archive_url).netloc != root_host:
            result.skipped.append((archive_url, "off-host"))
            continue
        if not budget_left():
            result.skipped.append((archive_url, "budget-exhausted"))
            continue
        if archive_url in visited:
            continue
        arch_res = visit(archive_url)
        if arch_res is None:
            continue
        if not arch_res.ok:
            result.skipped.append((archive_url, "status-%d" % arch_res.status))
            continue
        if not arch_res.is_html:
            result.skipped.append((archive_url, "not-html"))
            continue

        for post_url in extract_post_links(arch_res.text(), arch_res.final_url,
                                           plan.same_host_only):
            if post_url in seen_posts or post_url in visited:
                continue
            if not budget_left():
                result.skipped.append((post_url, "budget-exhausted"))
                continue
            post_res = visit(post_url)
            if post_res is None:
                continue
            if not post_res.ok:
                result.skipped.append((post_url, "status-%d" % post_res.status))
                continue
            if not post_res.is_html:
                result.skipped.append((post_url, "not-html"))
                continue
            seen_posts.add(post_url)
            result.post_pages.append((post_url, post_res.text()))

    return result
