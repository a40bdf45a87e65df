"""Paragraph, sentence and token segmentation."""
from __future__ import annotations

import re

_SENTENCE_END = re.compile(r"(?<=[.!?])\s+(?=[\"'(]?[A-Z0-9])")
_TOKEN = re.compile(
    r"[A-Za-z]+(?:-[A-Za-z]+)*"    # words, hyphenated kept whole
    r"|\d+(?:[.,]\d+)*"            # numbers
    r"|'s|'|’s|’"        # possessive clitics
    r"|n't"
    r"|[^\sA-Za-z0-9]"             # single punctuation marks
)


def split_paragraphs(text: str) -> list[str]:
    """Blank-line delimited blocks."""
    blocks = re.split(r"\n\s*\n", text)
    return [" ".join(block.split()) for block in blocks if block.strip()]


def split_sentences(paragraph: str) -> list[str]:
    parts = _SENTENCE_END.split(paragraph.strip())
    return [part.strip() for part in parts if part.strip()]


def tokenize(sentence: str) -> list[str]:
    text = sentence.replace("’", "'")
    return _TOKEN.findall(text)
