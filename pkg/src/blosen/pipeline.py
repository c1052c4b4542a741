"""End-to-end ingestion: crawl -> parse -> analyze -> index -> commit."""

from __future__ import annotations

from dataclasses import dataclass, field

from .analyzer import ContentAnalyzer, CorpusStats
from .crawler import CrawlPlan, Fetcher, crawl_blog
from .docmodel import BlogHost, BlogPostDocument
from .index import DuplicateDocument, IndexWriter
from .parser import DEFAULT_TABLES, ParserError, detect_template, parse_post


@dataclass
class IngestReport:
    visited: int = 0
    parsed: int = 0
    indexed: int = 0
    skipped: list = field(default_factory=list)  # (url, reason)


def analyze_documents(docs, analyzer: ContentAnalyzer | None = None):
    """Attach categories/keywords using a corpus-wide stats snapshot."""
    docs = list(docs)
    analyzer = analyzer or ContentAnalyzer()
    stats = CorpusStats.from_texts(d.post_content for d in docs)
    return [
        doc.with_analysis(*analyzer.analyze(doc.post_content, stats))
        for doc in docs
    ]


def index_documents(docs, index_dir: str, analyze: bool = True,
                    analyzer: ContentAnalyzer | None = None) -> IngestReport:
    report = IngestReport()
    docs = list(docs)
    if analyze:
        docs = analyze_documents(docs, analyzer)
    with IndexWriter(index_dir) as writer:
        for doc in docs:
            try:
                writer.add_document(doc)
                report.indexed += 1
            except DuplicateDocument:
                report.skipped.append((doc.post_url, "duplicate"))
        writer.commit()
    return report


def crawl_and_index(plan: CrawlPlan, fetcher: Fetcher, index_dir: str,
                    analyzer: ContentAnalyzer | None = None,
                    rule_tables=None, delay: bool = False) -> IngestReport:
    rule_tables = rule_tables or DEFAULT_TABLES
    crawl = crawl_blog(plan, fetcher, delay=delay)

    docs: list[BlogPostDocument] = []
    report = IngestReport(visited=crawl.visited_count, skipped=list(crawl.skipped))
    for url, html in crawl.post_pages:
        host = detect_template(html)
        table = rule_tables.get(host)
        if table is None:
            report.skipped.append((url, "unknown-template"))
            continue
        try:
            docs.append(parse_post(html, url, table))
            report.parsed += 1
        except ParserError as exc:
            report.skipped.append((url, "parse-error: %s" % exc))

    ingest = index_documents(docs, index_dir, analyzer=analyzer)
    report.indexed = ingest.indexed
    report.skipped.extend(ingest.skipped)
    return report
