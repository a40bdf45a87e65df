"""Dependency-parsed corpus model and its JSON-lines (de)serialization.

One document per line: {id, sentences:[{paragraph, tokens:[{i, form, lemma,
upos, head, deprel}], noun_chunks:[[start, end(, ne)], ...]}], coref:[{rep:
{sent, span}, mentions:[{sent, span}, ...]}]}. Token indices are 1-based;
head 0 marks the root; spans are inclusive [start, end] pairs. A noun chunk
may carry a third element flagging a named entity.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .textutil import smart_join


class CorpusFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ParsedToken:
    i: int
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str


@dataclass(frozen=True)
class NounChunk:
    start: int
    end: int
    is_entity: bool = False

    def indices(self) -> range:
        return range(self.start, self.end + 1)


@dataclass
class ParsedSentence:
    tokens: tuple[ParsedToken, ...]
    noun_chunks: tuple[NounChunk, ...] = ()
    paragraph: int = 0
    _children: dict[int, tuple[int, ...]] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.tokens)
        roots = 0
        for pos, tok in enumerate(self.tokens, start=1):
            if tok.i != pos:
                raise CorpusFormatError(f"token index {tok.i} at position {pos}")
            if not 0 <= tok.head <= n:
                raise CorpusFormatError(f"head {tok.head} out of range for {tok.form!r}")
            if tok.head == 0:
                roots += 1
        if n and roots != 1:
            raise CorpusFormatError(f"expected exactly one root, found {roots}")
        covered: set[int] = set()
        for chunk in self.noun_chunks:
            if not 1 <= chunk.start <= chunk.end <= n:
                raise CorpusFormatError(f"noun chunk {chunk} out of bounds")
            span = set(chunk.indices())
            if span & covered:
                raise CorpusFormatError(f"overlapping noun chunk {chunk}")
            covered |= span
        children: dict[int, list[int]] = {}
        for tok in self.tokens:
            children.setdefault(tok.head, []).append(tok.i)
        self._children = {head: tuple(ids) for head, ids in children.items()}

    def token(self, i: int) -> ParsedToken:
        return self.tokens[i - 1]

    def children(self, i: int, *deprels: str) -> list[ParsedToken]:
        kids = [self.token(j) for j in self._children.get(i, ())]
        if deprels:
            kids = [t for t in kids if t.deprel in deprels]
        return kids

    def root(self) -> ParsedToken | None:
        for tok in self.tokens:
            if tok.head == 0:
                return tok
        return None

    def subtree(self, i: int) -> list[int]:
        """Token indices of the subtree rooted at ``i``, in sentence order."""
        out = [i]
        stack = [i]
        while stack:
            node = stack.pop()
            for child in self._children.get(node, ()):
                out.append(child)
                stack.append(child)
        return sorted(out)

    def span_text(self, indices) -> str:
        return smart_join([self.token(i).form for i in sorted(indices)])


@dataclass(frozen=True)
class Mention:
    sent: int
    span: tuple[int, int]


@dataclass(frozen=True)
class CorefChain:
    rep: Mention
    mentions: tuple[Mention, ...]


@dataclass
class ParsedDocument:
    id: str
    sentences: tuple[ParsedSentence, ...]
    coref: tuple[CorefChain, ...] = ()

    def __post_init__(self):
        for chain in self.coref:
            spots = (chain.rep,) + chain.mentions
            paragraphs = set()
            for mention in spots:
                if not 0 <= mention.sent < len(self.sentences):
                    raise CorpusFormatError(
                        f"coref mention sentence {mention.sent} out of range")
                sentence = self.sentences[mention.sent]
                start, end = mention.span
                if not 1 <= start <= end <= len(sentence.tokens):
                    raise CorpusFormatError(f"coref span {mention.span} out of range")
                paragraphs.add(sentence.paragraph)
            if len(paragraphs) > 1:
                raise CorpusFormatError("coref chains must stay within one paragraph")

    def mention_text(self, mention: Mention) -> str:
        sentence = self.sentences[mention.sent]
        return sentence.span_text(range(mention.span[0], mention.span[1] + 1))

    def chain_for(self, sent: int, token_index: int) -> CorefChain | None:
        """The chain with a mention covering ``token_index`` in sentence ``sent``."""
        for chain in self.coref:
            for mention in chain.mentions:
                if mention.sent == sent and mention.span[0] <= token_index <= mention.span[1]:
                    return chain
        return None


def _sentence_from_json(obj: dict) -> ParsedSentence:
    tokens = tuple(
        ParsedToken(i=int(t["i"]), form=t["form"], lemma=t["lemma"],
                    upos=t["upos"], head=int(t["head"]), deprel=t["deprel"])
        for t in obj["tokens"]
    )
    chunks = []
    for span in obj.get("noun_chunks", ()):
        start, end = int(span[0]), int(span[1])
        is_entity = bool(span[2]) if len(span) > 2 else False
        chunks.append(NounChunk(start, end, is_entity))
    return ParsedSentence(tokens=tokens, noun_chunks=tuple(chunks),
                          paragraph=int(obj.get("paragraph", 0)))


def document_from_json(obj: dict) -> ParsedDocument:
    sentences = tuple(_sentence_from_json(s) for s in obj["sentences"])
    chains = []
    for chain in obj.get("coref", ()):
        rep = Mention(int(chain["rep"]["sent"]), tuple(chain["rep"]["span"]))
        mentions = tuple(Mention(int(m["sent"]), tuple(m["span"]))
                         for m in chain["mentions"])
        chains.append(CorefChain(rep=rep, mentions=mentions))
    return ParsedDocument(id=str(obj["id"]), sentences=sentences,
                          coref=tuple(chains))


def document_to_json(doc: ParsedDocument) -> dict:
    return {
        "id": doc.id,
        "sentences": [
            {
                "paragraph": s.paragraph,
                "tokens": [
                    {"i": t.i, "form": t.form, "lemma": t.lemma, "upos": t.upos,
                     "head": t.head, "deprel": t.deprel}
                    for t in s.tokens
                ],
                "noun_chunks": [
                    [c.start, c.end, 1] if c.is_entity else [c.start, c.end]
                    for c in s.noun_chunks
                ],
            }
            for s in doc.sentences
        ],
        "coref": [
            {"rep": {"sent": c.rep.sent, "span": list(c.rep.span)},
             "mentions": [{"sent": m.sent, "span": list(m.span)}
                          for m in c.mentions]}
            for c in doc.coref
        ],
    }


def read_corpus(path: str | Path) -> Iterator[ParsedDocument]:
    with open(path, encoding="utf-8") as fh:
        for number, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield document_from_json(json.loads(line))
            except (KeyError, TypeError, ValueError) as exc:
                raise CorpusFormatError(f"{path}:{number}: {exc}") from exc


def write_corpus(docs, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(document_to_json(doc), ensure_ascii=False) + "\n")
