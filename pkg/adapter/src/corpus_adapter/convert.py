"""Text -> parsed-document conversion and JSON emission.

The output schema is the consuming pipeline's parsed-corpus interface: one
document per JSON line with 1-based token indices, head 0 for the root,
inclusive noun-chunk spans (third element flags named entities) and
paragraph-local coreference chains.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .coref import find_chains
from .parser import SentenceParse, parse_sentence
from .segment import split_paragraphs, split_sentences, tokenize
from .tagger import tag


@dataclass
class ConvertedDocument:
    id: str
    sentences: list[SentenceParse] = field(default_factory=list)
    paragraphs: list[int] = field(default_factory=list)
    chains: list = field(default_factory=list)


def convert_text(doc_id: str, text: str, enable_coref: bool = False,
                 warn=lambda message: print(message, file=sys.stderr)) -> ConvertedDocument:
    """Segment, tag and parse one document; parser failures drop the sentence
    with a warning but keep the document."""
    doc = ConvertedDocument(id=doc_id)
    for paragraph_index, paragraph in enumerate(split_paragraphs(text)):
        for sentence in split_sentences(paragraph):
            tokens = tokenize(sentence)
            if not tokens:
                continue
            try:
                parse = parse_sentence(tag(tokens))
            except Exception as exc:  # noqa: BLE001 - omission by contract
                warn(f"{doc_id}: dropping unparseable sentence "
                     f"({type(exc).__name__}: {exc}): {sentence[:80]}")
                continue
            doc.sentences.append(parse)
            doc.paragraphs.append(paragraph_index)
    if not doc.sentences:
        warn(f"{doc_id}: no parseable sentences, emitting an empty document")
    if enable_coref and doc.sentences:
        doc.chains = find_chains(doc.sentences, doc.paragraphs)
    return doc


def document_to_json(doc: ConvertedDocument) -> dict:
    sentences = []
    for parse, paragraph in zip(doc.sentences, doc.paragraphs):
        tokens = [
            {"i": position + 1, "form": word.form, "lemma": word.lemma,
             "upos": word.upos, "head": word.head, "deprel": word.deprel}
            for position, word in enumerate(parse.words)
        ]
        chunks = []
        for chunk in parse.chunks:
            span = [chunk.start + 1, chunk.end + 1]
            if chunk.is_entity:
                span.append(1)
            chunks.append(span)
        sentences.append({"paragraph": paragraph, "tokens": tokens,
                          "noun_chunks": chunks})
    coref = [
        {"rep": {"sent": chain.rep[0], "span": list(chain.rep[1])},
         "mentions": [{"sent": sent, "span": list(span)}
                      for sent, span in chain.mentions]}
        for chain in doc.chains
    ]
    return {"id": doc.id, "sentences": sentences, "coref": coref}
