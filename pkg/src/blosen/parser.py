"""Blog post extraction: template detection + per-host selector rules.

Each hosting service gets a rule table with an ordered selector list per
document field; the first selector that matches wins.  Tables can be
loaded from a config file (``host, field, selector, mode`` lines), with
built-in defaults for standard Blogger and WordPress themes.
"""

from __future__ import annotations

from dataclasses import dataclass
from urllib.parse import urljoin

from .docmodel import BlogHost, BlogPostDocument, parse_date
from .htmldom import Element, parse_html, strip_markup


class ParserError(ValueError):
    pass


class TemplateMismatch(ParserError):
    pass


class ExtractionFailure(ParserError):
    """Raised when a mandatory field cannot be extracted; names the field."""


# extraction modes: how the matched element turns into a value
MODE_TEXT = "text"
MODE_META = "meta-content"


@dataclass(frozen=True)
class SelectorRule:
    field: str
    selectors: tuple  # ordered; first match wins
    mode: str = MODE_TEXT  # "text", "meta-content", or "attr:<name>"

    def __post_init__(self):
        if not self.selectors:
            raise ValueError("rule for %r has no selectors" % self.field)

    def extract(self, root: Element) -> str | None:
        for selector in self.selectors:
            el = root.select_one(selector)
            if el is None:
                continue
            if self.mode == MODE_META or self.mode.startswith("attr:"):
                attr = "content" if self.mode == MODE_META else self.mode[5:]
                value = el.attrs.get(attr, "").strip()
            else:
                value = el.text()
            if value:
                return value
        return None

    def extract_all(self, root: Element) -> list[str]:
        for selector in self.selectors:
            matches = root.select(selector)
            values = [m.text() for m in matches]
            values = [v for v in values if v]
            if values:
                return values
        return []


@dataclass(frozen=True)
class RuleTable:
    host: BlogHost
    rules: dict  # field name -> SelectorRule

    def rule(self, field: str) -> SelectorRule | None:
        return self.rules.get(field)


BLOGGER_RULES = RuleTable(BlogHost.BLOGGER, {
    "blog_title": SelectorRule("blog_title", (".blog-title", "h1.title", "title")),
    "blog_name": SelectorRule("blog_name", ("meta[property=og:site_name]",), MODE_META),
    "post_title": SelectorRule("post_title", ("h3.post-title", ".entry-title", "h1.post-title")),
    "post_url": SelectorRule("post_url", ("link[rel=canonical]",), "attr:href"),
    "post_date": SelectorRule("post_date", ("abbr.published[title]",), "attr:title"),
    "post_date_text": SelectorRule("post_date_text", ("h2.date-header", ".date-header")),
    "post_content": SelectorRule("post_content", (".post-body", ".entry-content")),
    "post_author": SelectorRule("post_author", (".post-author .fn", ".post-author", ".author")),
    "post_comments": SelectorRule("post_comments", (".comment-content", ".comment-body")),
})

WORDPRESS_RULES = RuleTable(BlogHost.WORDPRESS, {
    "blog_title": SelectorRule("blog_title", (".site-title", "h1.blog-title", "title")),
    "blog_name": SelectorRule("blog_name", ("meta[property=og:site_name]",), MODE_META),
    "post_title": SelectorRule("post_title", ("h1.entry-title", ".entry-title", "h2.entry-title")),
    "post_url": SelectorRule("post_url", ("link[rel=canonical]",), "attr:href"),
    "post_date": SelectorRule("post_date", ("time.entry-date[datetime]",), "attr:datetime"),
    "post_date_text": SelectorRule("post_date_text", (".entry-date", ".posted-on")),
    "post_content": SelectorRule("post_content", (".entry-content", ".post-content")),
    "post_author": SelectorRule("post_author", (".author .fn", ".author-name", ".author")),
    "post_comments": SelectorRule("post_comments", (".comment-body .comment-text", ".comment-body")),
})

DEFAULT_TABLES = {
    BlogHost.BLOGGER: BLOGGER_RULES,
    BlogHost.WORDPRESS: WORDPRESS_RULES,
}


def load_rule_tables(path: str) -> dict:
    """Rule-table config: ``host, field, selector, mode`` per line.

    Lines for the same (host, field) accumulate selectors in file order.
    Hosts absent from the file keep their built-in defaults.
    """
    collected: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) < 3:
                raise ParserError("bad rule line %d: %r" % (lineno, line))
            host_name, field, selector = parts[0], parts[1], parts[2]
            mode = parts[3] if len(parts) > 3 else MODE_TEXT
            try:
                host = BlogHost(host_name.lower())
            except ValueError:
                raise ParserError("unknown host %r on line %d" % (host_name, lineno)) from None
            collected.setdefault(host, {}).setdefault(field, {"selectors": [], "mode": mode})
            collected[host][field]["selectors"].append(selector)

    tables = dict(DEFAULT_TABLES)
    for host, fields in collected.items():
        rules = {
            field: SelectorRule(field, tuple(spec["selectors"]), spec["mode"])
            for field, spec in fields.items()
        }
        tables[host] = RuleTable(host, rules)
    return tables


def detect_template(html: str) -> BlogHost:
    """Blogger/WordPress detection from generator meta tags and markers."""
    root = parse_html(html)
    for meta in root.select("meta[name=generator]"):
        content = (meta.attrs.get("content") or "").lower()
        if "blogger" in content:
            return BlogHost.BLOGGER
        if "wordpress" in content:
            return BlogHost.WORDPRESS
    lowered = html.lower()
    if "blogspot.com" in lowered or "blogger.com" in lowered:
        return BlogHost.BLOGGER
    if "wp-content" in lowered or "wp-includes" in lowered:
        return BlogHost.WORDPRESS
    return BlogHost.UNKNOWN


def parse_post(html: str, page_url: str, table: RuleTable) -> BlogPostDocument:
    """Extract the ten blog elements from one post page.

    post_content is the only mandatory field; everything else degrades
    to an empty value.  Raises TemplateMismatch when the page's host
    markers contradict the rule table.
    """
    detected = detect_template(html)
    if detected is not BlogHost.UNKNOWN and detected is not table.host:
        raise TemplateMismatch("page is %s, table is %s" % (detected.value, table.host.value))

    root = parse_html(html)

    def extract(field: str) -> str:
        rule = table.rule(field)
        return (rule.extract(root) or "") if rule else ""

    content_rule = table.rule("post_content")
    content_el = None
    if content_rule:
        for selector in content_rule.selectors:
            content_el = root.select_one(selector)
            if content_el is not None:
                break
    if content_el is None:
        raise ExtractionFailure("post_content")
    post_content = content_el.text()

    post_url = extract("post_url") or page_url

    date_value = extract("post_date") or extract("post_date_text")
    post_date = parse_date(date_value) if date_value else None

    comments_rule = table.rule("post_comments")
    comments = comments_rule.extract_all(root) if comments_rule else []

    blog_url = urljoin(page_url, "/")
    blog_title = extract("blog_title")

    return BlogPostDocument(
        post_url=post_url,
        blog_url=blog_url,
        blog_title=blog_title,
        blog_name=extract("blog_name") or blog_title,
        generator=table.host,
        post_title=extract("post_title"),
        post_date=post_date,
        post_content=post_content,
        post_author=extract("post_author"),
        post_comments=tuple(comments),
    )


__all__ = [
    "SelectorRule", "RuleTable", "detect_template", "parse_post",
    "strip_markup", "load_rule_tables", "DEFAULT_TABLES",
    "BLOGGER_RULES", "WORDPRESS_RULES",
    "ParserError", "TemplateMismatch", "ExtractionFailure",
]
