"""KB consumption: context building for question answering, verbalization,
and per-kind statistics. Read-only over an immutable KB, safe for concurrent
queries.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .model import FacetedAssertion, FacetKey, KnowledgeBase, SubjectKind
from .textutil import DEFAULT_STOPWORDS, pluralize, singularize, tokenize

TRIPLES_ONLY = "triples-only"
WITH_FACETS = "with-facets"


@dataclass(frozen=True)
class ContextRequest:
    query: str
    char_limit: int = 256
    facet_mode: str = TRIPLES_ONLY
    top_n: int | None = None
    stopwords: frozenset[str] = DEFAULT_STOPWORDS

    def __post_init__(self):
        if self.char_limit < 1:
            raise ValueError("char_limit must be >= 1")
        if self.facet_mode not in {TRIPLES_ONLY, WITH_FACETS}:
            raise ValueError(f"unknown facet mode {self.facet_mode!r}")
        if self.top_n is not None and self.top_n < 1:
            raise ValueError("top_n must be >= 1")


@dataclass(frozen=True)
class RankedAssertion:
    subject: str
    kb_rank: int
    overlap: int
    sentence: str
    assertion: FacetedAssertion


def _capitalize(text: str) -> str:
    return text[:1].upper() + text[1:] if text else text


def _pluralize_phrase(phrase: str) -> str:
    words = phrase.split()
    if not words:
        return phrase
    words[-1] = pluralize(words[-1])
    return " ".join(words)


def verbalize(assertion: FacetedAssertion, with_facets: bool = False) -> str:
    """One sentence: pluralized surface subject + surface predicate + surface
    object, with facet values woven in when requested (degree adverbs sit
    before the object, other facets follow it). Normalized forms stand in when
    no surface forms were stored."""
    subject = assertion.surface_subject or assertion.subject
    predicate = assertion.surface_predicate or assertion.predicate
    obj = assertion.surface_object or assertion.object
    if not assertion.surface_predicate and assertion.predicate == "be":
        predicate = "are"
    parts = [_pluralize_phrase(subject), predicate]
    trailing: list[str] = []
    if with_facets:
        for facet in assertion.facets:
            if facet.key is FacetKey.DEGREE and len(facet.value.split()) == 1:
                parts.append(facet.value)
            else:
                trailing.append(facet.value)
    parts.append(obj)
    parts.extend(trailing)
    sentence = " ".join(p for p in parts if p).strip()
    if not sentence.endswith("."):
        sentence += "."
    return _capitalize(sentence)


def _fold(token: str) -> str:
    return singularize(token.lower())


def _query_tokens(query: str, stopwords: frozenset[str]) -> set[str]:
    return {_fold(t) for t in tokenize(query) if t not in stopwords}


def _subject_mentioned(subject: str, folded_query: set[str]) -> bool:
    head = subject.split()[-1]
    return _fold(head) in folded_query


def _overlap(sentence: str, folded_query: set[str]) -> int:
    sentence_tokens = {_fold(t) for t in tokenize(sentence)}
    return len(folded_query & sentence_tokens)


def _most_frequent_facet(assertion: FacetedAssertion) -> FacetedAssertion:
    if not assertion.facets:
        return assertion
    best = assertion.facets[0]
    for facet in assertion.facets[1:]:
        if facet.frequency > best.frequency:
            best = facet
    return replace(assertion, facets=(best,))


@dataclass
class ContextResult:
    text: str
    used: list[RankedAssertion]


def build_context(request: ContextRequest, kb: KnowledgeBase) -> ContextResult:
    """Rank assertions whose subject is mentioned in the query by the number
    of distinct non-stopword query tokens appearing in their verbalization
    (ties by KB rank), then concatenate sentences up to the character limit,
    or up to ``top_n`` statements when that cap is set."""
    folded_query = _query_tokens(request.query, request.stopwords)
    with_facets = request.facet_mode == WITH_FACETS
    candidates: list[RankedAssertion] = []
    for name in kb.subjects:
        if not _subject_mentioned(name, folded_query):
            continue
        for rank, assertion in enumerate(kb.ranked(name)):
            rendered = assertion
            if with_facets:
                rendered = _most_frequent_facet(assertion)
            sentence = verbalize(rendered, with_facets=with_facets)
            candidates.append(RankedAssertion(
                subject=name, kb_rank=rank,
                overlap=_overlap(sentence, folded_query),
                sentence=sentence, assertion=assertion))
    candidates.sort(key=lambda c: (-c.overlap, c.kb_rank))

    used: list[RankedAssertion] = []
    text = ""
    for candidate in candidates:
        if request.top_n is not None:
            if len(used) >= request.top_n:
                break
            grown = f"{text} {candidate.sentence}".strip()
        else:
            grown = f"{text} {candidate.sentence}".strip()
            if len(grown) > request.char_limit:
                break
        text = grown
        used.append(candidate)
    return ContextResult(text=text, used=used)


def kb_stats(kb: KnowledgeBase) -> dict[str, dict[str, int]]:
    """Per-kind subject, assertion and facet counts plus their totals."""
    stats = {
        kind.value: {"subjects": 0, "assertions": 0, "facets": 0}
        for kind in SubjectKind
    }
    for entry in kb.subjects.values():
        stats[entry.kind.value]["subjects"] += 1
    for entry, _rank, assertion in kb.iter_ranked():
        stats[entry.kind.value]["assertions"] += 1
        stats[entry.kind.value]["facets"] += len(assertion.facets)
    stats["all"] = {
        field: sum(stats[kind.value][field] for kind in SubjectKind)
        for field in ("subjects", "assertions", "facets")
    }
    return stats
