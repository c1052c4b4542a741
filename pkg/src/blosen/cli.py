"""Command-line entry points: crawl, index, search, serve, eval, merge."""

from __future__ import annotations

import json
import sys

import click

from .analyzer import ContentAnalyzer, load_taxonomy
from .cluster import cluster_results, tree_payload
from .config import load_config
from .crawler import CrawlPlan, FixtureFetcher, HttpFetcher
from .docmodel import MalformedDocument, from_canonical_json
from .evaluator import (
    EvalError, aggregate, default_sessions_path, load_sessions_csv, write_report,
)
from .index import IndexReader, IndexWriter
from .index.errors import IndexError_
from .parser import load_rule_tables
from .pipeline import crawl_and_index, index_documents
from .query import QueryError, parse_query
from .search import PageOutOfRange, execute


@click.group()
def main():
    """BloSen blog search engine."""


@main.command()
@click.argument("root_url")
@click.option("--index-dir", default="index", show_default=True)
@click.option("--max-pages", default=200, show_default=True)
@click.option("--delay", default=0.5, show_default=True, help="seconds between fetches")
@click.option("--fixture-manifest", default=None,
              help="TSV url<TAB>path manifest; crawl fixtures instead of the live web")
@click.option("--taxonomy", default=None, help="taxonomy file for category analysis")
@click.option("--rules", default=None, help="selector rule-table config file")
def crawl(root_url, index_dir, max_pages, delay, fixture_manifest, taxonomy, rules):
    """Crawl a blog and index its posts."""
    plan = CrawlPlan(root_url=root_url, max_pages=max_pages, per_request_delay=delay)
    if fixture_manifest:
        fetcher = FixtureFetcher(fixture_manifest)
    else:
        fetcher = HttpFetcher()
    analyzer = ContentAnalyzer(load_taxonomy(taxonomy)) if taxonomy else None
    rule_tables = load_rule_tables(rules) if rules else None
    try:
        report = crawl_and_index(plan, fetcher, index_dir, analyzer=analyzer,
                                 rule_tables=rule_tables,
                                 delay=fixture_manifest is None)
    except Exception as exc:
        raise click.ClickException(str(exc))
    click.echo("visited %d pages, parsed %d, indexed %d, skipped %d"
               % (report.visited, report.parsed, report.indexed, len(report.skipped)))
    for url, reason in report.skipped:
        click.echo("  skipped %s (%s)" % (url, reason), err=True)


@main.command(name="index")
@click.argument("corpus", type=click.Path(exists=True))
@click.option("--index-dir", default="index", show_default=True)
@click.option("--no-analyze", is_flag=True, help="keep categories/keywords from the corpus file")
@click.option("--taxonomy", default=None)
def index_cmd(corpus, index_dir, no_analyze, taxonomy):
    """Bulk-load a JSONL corpus (one canonical document per line)."""
    docs = []
    with open(corpus, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                docs.append(from_canonical_json(line))
            except (MalformedDocument, ValueError) as exc:
                raise click.ClickException("line %d: %s" % (lineno, exc))
    analyzer = ContentAnalyzer(load_taxonomy(taxonomy)) if taxonomy else None
    try:
        report = index_documents(docs, index_dir, analyze=not no_analyze,
                                 analyzer=analyzer)
    except IndexError_ as exc:
        raise click.ClickException(str(exc))
    click.echo("indexed %d documents into %s" % (report.indexed, index_dir))
    for url, reason in report.skipped:
        click.echo("  skipped %s (%s)" % (url, reason), err=True)


@main.command()
@click.argument("query_text")
@click.option("--index-dir", default="index", show_default=True)
@click.option("--view", type=click.Choice(["traditional", "clustered"]),
              default="traditional", show_default=True)
@click.option("--page", default=1, show_default=True)
@click.option("--size", default=10, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="print raw JSON")
def search(query_text, index_dir, view, page, size, as_json):
    """One-shot query against an index, results to stdout."""
    try:
        reader = IndexReader.open(index_dir)
    except FileNotFoundError:
        raise click.ClickException("no index at %s" % index_dir)
    if reader.doc_count == 0:
        raise click.ClickException("index at %s is empty or missing" % index_dir)
    try:
        query = parse_query(query_text)
        result = execute(query, reader, page=page, size=size)
    except (QueryError, PageOutOfRange, ValueError) as exc:
        raise click.ClickException(str(exc))

    if view == "clustered":
        tree = cluster_results(result.hits)
        if as_json:
            click.echo(json.dumps(tree_payload(tree), indent=2, ensure_ascii=False))
            return
        click.echo("%d hits in %d clusters (page %d/%d)"
                   % (result.total, len(tree.nodes), result.page, result.total_pages))
        for node in tree.nodes:
            click.echo("%s (%d)" % (node.label, node.hit_count))
            for hit in node.hits:
                click.echo("    %.3f  %s" % (hit.score, hit.document.post_title or hit.document.post_url))
                click.echo("          %s" % hit.document.post_url)
    else:
        if as_json:
            click.echo(json.dumps(result.to_payload(), indent=2, ensure_ascii=False))
            return
        click.echo("%d hits (page %d/%d)" % (result.total, result.page, result.total_pages))
        for hit in result.hits:
            doc = hit.document
            click.echo("%.3f  %s" % (hit.score, doc.post_title or doc.post_url))
            click.echo("       %s" % doc.post_url)
            if hit.snippet:
                click.echo("       %s" % hit.snippet)


@main.command()
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--index-dir", default=None)
@click.option("--host", default=None)
@click.option("--port", default=None, type=int)
@click.option("--ui-dir", default=None, type=click.Path(exists=True),
              help="static frontend build to serve under /ui")
def serve(config_path, index_dir, host, port, ui_dir):
    """Run the HTTP JSON API."""
    import uvicorn

    from .service import create_app

    config = load_config(config_path)
    if index_dir:
        config.index_dir = index_dir
    if host:
        config.listen_host = host
    if port:
        config.listen_port = port
    if ui_dir:
        config.ui_dir = ui_dir
    app = create_app(config)
    uvicorn.run(app, host=config.listen_host, port=config.listen_port)


@main.command(name="eval")
@click.option("--input", "input_path", default=None, type=click.Path(exists=True),
              help="sessions CSV; defaults to the bundled relevance study data")
@click.option("--out-dir", default="eval-report", show_default=True)
@click.option("--no-figures", is_flag=True)
def eval_cmd(input_path, out_dir, no_figures):
    """Aggregate relevance-feedback sessions into a report with figures."""
    path = input_path or default_sessions_path()
    try:
        report = aggregate(load_sessions_csv(path))
    except (EvalError, OSError, ValueError, KeyError) as exc:
        raise click.ClickException(str(exc))
    artifacts = write_report(report, out_dir, figures=not no_figures)
    click.echo(report.to_text_table())
    click.echo("report written to %s" % artifacts["json"])
    click.echo(json.dumps({
        "mean_crc": report.mean_crc,
        "mean_prc": report.mean_prc,
        "mean_cic": report.mean_cic,
        "cumulative": report.cumulative,
    }))


@main.command()
@click.option("--index-dir", default="index", show_default=True)
def merge(index_dir):
    """Merge all index segments into one."""
    try:
        with IndexWriter(index_dir) as writer:
            before = writer.segment_count
            seg_id = writer.merge_segments()
    except IndexError_ as exc:
        raise click.ClickException(str(exc))
    if seg_id is None:
        click.echo("nothing to merge (%d segment(s))" % before)
    else:
        click.echo("merged %d segments into %s" % (before, seg_id))


if __name__ == "__main__":
    sys.exit(main())
