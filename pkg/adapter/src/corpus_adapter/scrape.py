"""Boilerplate-stripped main-content extraction from HTML."""
from __future__ import annotations

from dataclasses import dataclass
from html.parser import HTMLParser

SKIPPED_TAGS = {"script", "style", "nav", "header", "footer", "aside", "form",
                "iframe", "noscript", "svg", "button", "select", "template"}
BLOCK_TAGS = {"p", "div", "section", "article", "main", "li", "br", "h1",
              "h2", "h3", "h4", "h5", "h6", "tr", "blockquote"}
MAIN_TAGS = {"article", "main"}


@dataclass
class ScrapedPage:
    title: str
    text: str


class _ContentParser(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.skip_depth = 0
        self.main_depth = 0
        self.in_title = False
        self.title_parts: list[str] = []
        self.all_parts: list[str] = []
        self.main_parts: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag in SKIPPED_TAGS:
            self.skip_depth += 1
        if tag in MAIN_TAGS:
            self.main_depth += 1
        if tag == "title":
            self.in_title = True
        if tag in BLOCK_TAGS:
            self._break()

    def handle_endtag(self, tag):
        if tag in SKIPPED_TAGS and self.skip_depth:
            self.skip_depth -= 1
        if tag in MAIN_TAGS and self.main_depth:
            self.main_depth -= 1
        if tag == "title":
            self.in_title = False
        if tag in BLOCK_TAGS:
            self._break()

    def _break(self):
        for parts in (self.all_parts, self.main_parts):
            if parts and parts[-1] != "\n\n":
                parts.append("\n\n")

    def handle_data(self, data):
        if self.in_title:
            self.title_parts.append(data)
            return
        if self.skip_depth:
            return
        if data.strip():
            self.all_parts.append(data)
            if self.main_depth:
                self.main_parts.append(data)


def _join(parts: list[str]) -> str:
    text = "".join(parts)
    blocks = [" ".join(block.split()) for block in text.split("\n\n")]
    return "\n\n".join(block for block in blocks if block)


def scrape(source: str) -> ScrapedPage:
    """Extract the main text (and title) from HTML; plain text passes through
    unchanged."""
    if "<" not in source:
        return ScrapedPage(title="", text=source.strip())
    parser = _ContentParser()
    parser.feed(source)
    parser.close()
    main_text = _join(parser.main_parts)
    text = main_text if len(main_text) >= 100 else _join(parser.all_parts)
    return ScrapedPage(title=" ".join("".join(parser.title_parts).split()),
                       text=text)
