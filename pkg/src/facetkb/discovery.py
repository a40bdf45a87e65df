"""Source discovery: query generation, document fetching and relevance filtering.

Candidate documents are compared against a reference encyclopedia article via
bag-of-words cosine similarity; a document survives when its cosine *distance*
to the reference does not exceed the threshold rho (inclusive). Fetching and
scoring are per-document independent; the filter itself is a pure fold.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from math import sqrt
from pathlib import Path
from typing import Iterable, Protocol
from urllib.parse import urlparse

from .lexicon import Lexicon, concept_synset
from .textutil import DEFAULT_STOPWORDS, tokenize


@dataclass(frozen=True)
class QueryTemplate:
    """Search-query pattern attached to one hypernym synset."""

    hypernym_synset_id: str
    pattern: str

    def __post_init__(self):
        if self.pattern.count("{s}") != 1:
            raise ValueError("pattern must contain '{s}' exactly once")


@dataclass(frozen=True)
class RawDocument:
    id: str
    url: str
    title: str
    body: str


@dataclass(frozen=True)
class FilterConfig:
    rho: float = 0.45
    max_documents: int = 500
    stopwords: frozenset[str] = DEFAULT_STOPWORDS
    encyclopedia_host: str = "wikipedia.org"

    def __post_init__(self):
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must be in [0, 1]")
        if self.max_documents < 1:
            raise ValueError("max_documents must be >= 1")


def load_templates(path: str | Path) -> list[QueryTemplate]:
    """JSON list of {"synset": id, "pattern": "... {s} ..."} in priority order."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return [QueryTemplate(t["synset"], t["pattern"]) for t in doc]


def build_query(s0: str, lex: Lexicon, templates: Iterable[QueryTemplate]) -> str:
    """Walk the hypernym closure nearest-to-farthest; the first synset with a
    template wins. Falls back to "s0 (direct-hypernym-lemma)", or bare s0."""
    templates = list(templates)
    by_synset: dict[str, QueryTemplate] = {}
    for template in templates:
        by_synset.setdefault(template.hypernym_synset_id, template)
    syn = concept_synset(s0, lex)
    if syn is None:
        return s0
    for level in lex.hypernym_levels(syn.id):
        for sid in level:
            if sid in by_synset:
                return by_synset[sid].pattern.replace("{s}", s0)
    direct = sorted(syn.hypernyms)
    if direct:
        head = direct[0].split(".")[0].replace("_", " ")
        return f"{s0} ({head})"
    return s0


def bag_of_words(text: str,
                 stopwords: frozenset[str] = DEFAULT_STOPWORDS) -> Counter:
    """Lowercased Unicode-word multiset with stopwords removed."""
    return Counter(t for t in tokenize(text) if t not in stopwords)


def _counter_cosine(u: Counter, v: Counter) -> float:
    if not u or not v:
        return 0.0
    dot = sum(count * v[token] for token, count in u.items() if token in v)
    norm_sq = sum(c * c for c in u.values()) * sum(c * c for c in v.values())
    return dot / sqrt(norm_sq)


def reference_similarity(doc: RawDocument, ref: RawDocument,
                         stopwords: frozenset[str] = DEFAULT_STOPWORDS) -> float:
    """Cosine similarity of the two documents' bags of words, in [0, 1]."""
    return _counter_cosine(bag_of_words(doc.body, stopwords),
                           bag_of_words(ref.body, stopwords))


@dataclass(frozen=True)
class DocumentScore:
    doc_id: str
    similarity: float
    distance: float
    retained: bool
    no_reference: bool = False


@dataclass
class FilterResult:
    retained: list[RawDocument]
    report: list[DocumentScore]
    no_reference: bool = False


def filter_documents(docs: Iterable[RawDocument], ref: RawDocument | None,
                     cfg: FilterConfig) -> FilterResult:
    """Keep documents with cosine distance to the reference <= rho (inclusive).

    Without a reference every document is retained and flagged. Output order
    preserves input (fetcher) order.
    """
    retained: list[RawDocument] = []
    report: list[DocumentScore] = []
    if ref is None:
        for doc in docs:
            retained.append(doc)
            report.append(DocumentScore(doc.id, similarity=0.0, distance=1.0,
                                        retained=True, no_reference=True))
        return FilterResult(retained, report, no_reference=True)
    ref_bag = bag_of_words(ref.body, cfg.stopwords)
    for doc in docs:
        similarity = _counter_cosine(bag_of_words(doc.body, cfg.stopwords), ref_bag)
        distance = 1.0 - similarity
        keep = distance <= cfg.rho
        report.append(DocumentScore(doc.id, similarity, distance, keep))
        if keep:
            retained.append(doc)
    return FilterResult(retained, report)


def select_reference(s0: str, lex: Lexicon, candidates: list[RawDocument],
                     pairings: dict[str, str] | None = None,
                     encyclopedia_host: str = "wikipedia.org") -> RawDocument | None:
    """Reference article: the synset->article pairing when available, else the
    first candidate hosted by the configured encyclopedia, else absent."""
    syn = concept_synset(s0, lex)
    if pairings and syn and syn.id in pairings:
        target = pairings[syn.id]
        for doc in candidates:
            if doc.id == target or doc.url == target:
                return doc
    for doc in candidates:
        host = urlparse(doc.url).netloc.lower()
        if encyclopedia_host in host:
            return doc
    return None


class DocumentFetcher(Protocol):
    def fetch(self, query: str, max_documents: int) -> list[RawDocument]:
        ...


@dataclass
class OfflineCorpusFetcher:
    """Reads a directory of {id}.txt bodies plus {id}.meta.json sidecars
    (title, url, optional rank). Fetch order: rank, then id."""

    directory: Path

    def __post_init__(self):
        self.directory = Path(self.directory)

    def fetch(self, query: str, max_documents: int) -> list[RawDocument]:
        docs: list[tuple[float, str, RawDocument]] = []
        for text_path in sorted(self.directory.glob("*.txt")):
            doc_id = text_path.stem
            body = text_path.read_text(encoding="utf-8")
            if not body.strip():
                continue
            meta_path = text_path.with_name(text_path.stem + ".meta.json")
            meta = {}
            if meta_path.exists():
                meta = json.loads(meta_path.read_text(encoding="utf-8"))
            rank = float(meta.get("rank", float("inf")))
            docs.append((rank, doc_id, RawDocument(
                id=doc_id,
                url=meta.get("url", str(text_path)),
                title=meta.get("title", doc_id),
                body=body,
            )))
        docs.sort(key=lambda item: (item[0], item[1]))
        return [doc for _, _, doc in docs[:max_documents]]


@dataclass
class HttpFetcher:
    """GET ``endpoint?q=<query>&count=<n>`` expecting a JSON list of
    {id, url, title, body} objects."""

    endpoint: str
    timeout: float = 30.0

    def fetch(self, query: str, max_documents: int) -> list[RawDocument]:
        import requests

        response = requests.get(self.endpoint,
                                params={"q": query, "count": max_documents},
                                timeout=self.timeout)
        response.raise_for_status()
        docs = []
        for item in response.json()[:max_documents]:
            body = item.get("body", "")
            if not body.strip():
                continue
            docs.append(RawDocument(id=str(item["id"]), url=item.get("url", ""),
                                    title=item.get("title", ""), body=body))
        return docs
