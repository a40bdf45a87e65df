"""Paragraph-local pronoun coreference.

Nominative and possessive pronouns link to the most recent number-compatible
noun chunk earlier in the same paragraph; chains never cross paragraph
boundaries. Deliberately modest: the downstream pipeline only resolves
pronoun subjects and possessors through these chains.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import wordlists as w
from .parser import SentenceParse

PLURAL_PRONOUNS = {"they", "their", "them", "we", "our"}
SINGULAR_PRONOUNS = {"it", "its"}
PERSON_PRONOUNS = {"he", "his", "him", "she", "her"}
TARGET_PRONOUNS = PLURAL_PRONOUNS | SINGULAR_PRONOUNS | PERSON_PRONOUNS


@dataclass(frozen=True)
class Chain:
    rep: tuple[int, tuple[int, int]]          # (sentence, inclusive 1-based span)
    mentions: tuple[tuple[int, tuple[int, int]], ...]


def _is_plural(parse: SentenceParse, head: int) -> bool:
    form = parse.words[head].form.lower()
    lemma = parse.words[head].lemma
    if form in w.IRREGULAR_NOUNS:
        return True
    return form != lemma and form.endswith("s")


def _is_person(parse: SentenceParse, head: int) -> bool:
    return parse.words[head].upos == "PROPN"


def find_chains(sentences: list[SentenceParse],
                paragraphs: list[int]) -> list[Chain]:
    """One chain per resolved antecedent chunk, with every pronoun that picked
    it as a mention."""
    chains: dict[tuple[int, tuple[int, int]], list] = {}
    history: list[tuple[int, int, int, int]] = []  # sent, start, end, head
    current_paragraph: int | None = None
    for sent_index, parse in enumerate(sentences):
        paragraph = paragraphs[sent_index]
        if paragraph != current_paragraph:
            history = []
            current_paragraph = paragraph
        for position, word in enumerate(parse.words):
            if word.upos != "PRON" or word.lemma not in TARGET_PRONOUNS:
                continue
            wanted_plural = word.lemma in PLURAL_PRONOUNS
            wanted_person = word.lemma in PERSON_PRONOUNS
            antecedent = None
            for sent, start, end, head in reversed(history):
                if sent == sent_index and head >= position:
                    continue
                plural = _is_plural(sentences[sent], head)
                person = _is_person(sentences[sent], head)
                if wanted_plural and not plural:
                    continue
                if wanted_person and not person:
                    continue
                if word.lemma in SINGULAR_PRONOUNS and (plural or person):
                    continue
                antecedent = (sent, (start + 1, end + 1))
                break
            if antecedent is not None:
                chains.setdefault(antecedent, []).append(
                    (sent_index, (position + 1, position + 1)))
        for chunk in parse.chunks:
            if parse.words[chunk.head].upos == "PRON":
                continue
            history.append((sent_index, chunk.start, chunk.end, chunk.head))
    return [Chain(rep=rep, mentions=tuple(mentions))
            for rep, mentions in chains.items()]
