"""Minimal tolerant HTML DOM with simple compound-selector matching.

Built on html.parser; recovers from unclosed and mis-nested tags, which
real blog markup is full of.  Selector syntax covers what the extraction
rule tables need: ``tag``, ``.class``, ``#id``, ``tag.class``,
``tag[attr]``, ``tag[attr=value]`` and combinations thereof.
"""

from __future__ import annotations

import re
from html.parser import HTMLParser

VOID_TAGS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

_WS = re.compile(r"\s+")


class Element:
    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag: str, attrs: dict, parent=None):
        self.tag = tag
        self.attrs = attrs
        self.children: list = []  # Element or str
        self.parent = parent

    @property
    def classes(self) -> set:
        return set((self.attrs.get("class") or "").split())

    def text(self) -> str:
        """Descendant text, whitespace-collapsed, script/style excluded."""
        parts: list[str] = []
        self._collect_text(parts)
        return _WS.sub(" ", "".join(parts)).strip()

    def _collect_text(self, parts: list) -> None:
        if self.tag in ("script", "style"):
            return
        for child in self.children:
            if isinstance(child, str):
                parts.append(child)
            else:
                if child.tag in _BLOCK_TAGS:
                    parts.append(" ")
                child._collect_text(parts)
                if child.tag in _BLOCK_TAGS:
                    parts.append(" ")

    def iter(self):
        yield self
        for child in self.children:
            if isinstance(child, Element):
                yield from child.iter()

    def select(self, selector: str) -> list:
        """All descendant elements matching a compound selector."""
        pred = compile_selector(selector)
        return [el for el in self.iter() if el is not self and pred(el)]

    def select_one(self, selector: str):
        matches = self.select(selector)
        return matches[0] if matches else None

    def __repr__(self):
        return "<Element %s>" % self.tag


_BLOCK_TAGS = {
    "p", "div", "br", "li", "ul", "ol", "h1", "h2", "h3", "h4", "h5", "h6",
    "table", "tr", "td", "th", "blockquote", "pre", "section", "article",
    "header", "footer", "aside", "nav", "form",
}

_SELECTOR = re.compile(
    r"^(?P<tag>[a-zA-Z][a-zA-Z0-9]*)?"
    r"(?P<classes>(?:\.[\w-]+)*)"
    r"(?:#(?P<id>[\w-]+))?"
    r"(?:\[(?P<attr>[\w-]+)(?:=(?P<value>[^\]]*))?\])?$"
)


def compile_selector(selector: str):
    """Compile a selector; descendant combinators (spaces) are supported."""
    parts = selector.strip().split()
    if len(parts) > 1:
        preds = [_compile_compound(p) for p in parts]

        def descendant_predicate(el: Element) -> bool:
            if not preds[-1](el):
                return False
            node = el.parent
            remaining = len(preds) - 2
            while node is not None and remaining >= 0:
                if preds[remaining](node):
                    remaining -= 1
                node = node.parent
            return remaining < 0

        return descendant_predicate
    return _compile_compound(parts[0])


def _compile_compound(selector: str):
    match = _SELECTOR.match(selector.strip())
    if not match:
        raise ValueError("unsupported selector: %r" % selector)
    tag = match.group("tag")
    tag = tag.lower() if tag else None
    classes = set(c for c in match.group("classes").split(".") if c)
    elem_id = match.group("id")
    attr = match.group("attr")
    value = match.group("value")
    if value is not None:
        value = value.strip("\"'")

    def predicate(el: Element) -> bool:
        if tag and el.tag != tag:
            return False
        if classes and not classes <= el.classes:
            return False
        if elem_id and el.attrs.get("id") != elem_id:
            return False
        if attr:
            if attr not in el.attrs:
                return False
            if value is not None and el.attrs.get(attr) != value:
                return False
        return True

    return predicate


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Element("html", {})
        self.stack = [self.root]

    _SELF_CLOSING_SIBLINGS = {"p", "li", "tr", "td", "th", "option"}

    def handle_starttag(self, tag, attrs):
        if tag in VOID_TAGS:
            self.handle_startendtag(tag, attrs)
            return
        # an opening <p>/<li>/... implicitly closes an open sibling
        if tag in self._SELF_CLOSING_SIBLINGS and self.stack[-1].tag == tag:
            self.stack.pop()
        el = Element(tag, dict(attrs), parent=self.stack[-1])
        self.stack[-1].children.append(el)
        self.stack.append(el)

    def handle_startendtag(self, tag, attrs):
        el = Element(tag, dict(attrs), parent=self.stack[-1])
        self.stack[-1].children.append(el)

    def handle_endtag(self, tag):
        # pop to the matching open tag if one exists; ignore strays
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return

    def handle_data(self, data):
        if data:
            self.stack[-1].children.append(data)


def parse_html(html: str) -> Element:
    builder = _TreeBuilder()
    builder.feed(html)
    builder.close()
    return builder.root


def strip_markup(fragment: str) -> str:
    """Tags removed, entities decoded, whitespace collapsed,
    script/style content dropped."""
    return parse_html(fragment).text()
