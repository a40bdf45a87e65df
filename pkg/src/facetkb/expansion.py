"""Subgroup discovery, aspect discovery, and assertion routing.

Subgroups are noun chunks lexically extending the primary concept, variant-
merged by complete-linkage clustering over phrase vectors with antonym pairs
as hard cannot-link constraints. Aspects come from possessive chunks and from
have/contain-style triples. Every assertion is then routed to the primary
subject, one subgroup, or one aspect; anything else is dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .embeddings import EmbeddingTable, cosine_similarity, phrase_vector
from .extraction import ChunkOccurrence, ExtractedFacet, Extraction, ObjectToken
from .facets import FacetQuery, type_facet_heuristic
from .lexicon import Lexicon, contains_antonym_pair, is_foreign_hyponym, lemmas_of
from .model import SubjectKind


@dataclass(frozen=True)
class SubgroupCluster:
    members: tuple[str, ...]
    representative: str
    support: int

    def __post_init__(self):
        if self.representative not in self.members:
            raise ValueError("representative must be a cluster member")
        if self.support < 1:
            raise ValueError("support must be >= 1")


@dataclass(frozen=True)
class ExpansionConfig:
    min_support: int = 3
    subgroup_distance: float = 0.15
    max_subgroup_words: int = 5      # exclusive bound


@dataclass(frozen=True)
class RoutedAssertion:
    name: str
    kind: SubjectKind
    parent: str | None
    extraction: Extraction
    weight: int = 1


@dataclass
class RoutingResult:
    primary: list[RoutedAssertion] = field(default_factory=list)
    subgroup: list[RoutedAssertion] = field(default_factory=list)
    aspect: list[RoutedAssertion] = field(default_factory=list)
    dropped: int = 0


def aggregate_chunks(occurrences: Iterable[ChunkOccurrence]) -> list[ChunkOccurrence]:
    """Merge chunk occurrences by (text, possessor), summing counts. A chunk
    flagged as a named entity anywhere keeps the flag."""
    merged: dict[tuple[str, str | None], ChunkOccurrence] = {}
    for occ in occurrences:
        key = (occ.text, occ.possessor)
        seen = merged.get(key)
        if seen is None:
            merged[key] = occ
        else:
            merged[key] = ChunkOccurrence(
                text=occ.text, count=seen.count + occ.count,
                is_named_entity=seen.is_named_entity or occ.is_named_entity,
                possessor=occ.possessor, pos=seen.pos or occ.pos)
    return list(merged.values())


def _ends_with_lemma(tokens: Sequence[str], lemmas: Iterable[str]) -> bool:
    for lemma in lemmas:
        lemma_tokens = lemma.split()
        if len(tokens) > len(lemma_tokens) and \
                list(tokens[-len(lemma_tokens):]) == lemma_tokens:
            return True
    return False


def _complete_linkage_clusters(texts: list[str], emb: EmbeddingTable,
                               lex: Lexicon, threshold: float) -> list[list[int]]:
    n = len(texts)
    vectors = [phrase_vector(t, emb) for t in texts]
    blocked = float("inf")

    def distance(a: int, b: int) -> float:
        if contains_antonym_pair(texts[a], texts[b], lex):
            return blocked
        u, v = vectors[a], vectors[b]
        if u is None or v is None:
            return blocked
        try:
            return 1.0 - cosine_similarity(u, v)
        except ValueError:
            return blocked

    pair = {}
    for i in range(n):
        for j in range(i + 1, n):
            pair[(i, j)] = distance(i, j)

    clusters: list[list[int]] = [[i] for i in range(n)]
    while True:
        best = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                worst = max(
                    (pair[(min(i, j), max(i, j))]
                     for i in clusters[a] for j in clusters[b]),
                    default=blocked)
                if worst <= threshold and (best is None or worst < best[0]):
                    best = (worst, a, b)
        if best is None:
            return clusters
        _, a, b = best
        clusters[a] = clusters[a] + clusters[b]
        del clusters[b]


def collect_subgroups(chunks: Sequence[ChunkOccurrence], s0: str, lex: Lexicon,
                      emb: EmbeddingTable,
                      cfg: ExpansionConfig = ExpansionConfig()) -> list[SubgroupCluster]:
    """Candidate chunks end with a lemma of the subject, stay under the word
    limit, are no named entities and no foreign hyponyms. Chunks syntactically
    containing another candidate are absorbed into the contained one, the rest
    is variant-clustered."""
    lemmas = lemmas_of(s0, lex)
    candidates: dict[str, int] = {}
    for occ in aggregate_chunks(chunks):
        if occ.possessor is not None or occ.is_named_entity:
            continue
        tokens = occ.text.split()
        if len(tokens) >= cfg.max_subgroup_words:
            continue
        if not _ends_with_lemma(tokens, lemmas):
            continue
        if is_foreign_hyponym(occ.text, s0, lex):
            continue
        candidates[occ.text] = candidates.get(occ.text, 0) + occ.count

    order = list(candidates)
    by_length = sorted(order, key=lambda t: -len(t.split()))
    absorbed: set[str] = set()
    for text in by_length:
        tokens = text.split()
        for cut in range(1, len(tokens)):
            suffix = " ".join(tokens[cut:])
            if suffix in candidates and suffix != text:
                candidates[suffix] += candidates[text]
                absorbed.add(text)
                break
    retained = [t for t in order if t not in absorbed]

    texts = retained
    counts = [candidates[t] for t in texts]
    groups = _complete_linkage_clusters(texts, emb, lex, cfg.subgroup_distance)
    clusters = []
    for group in groups:
        members = tuple(texts[i] for i in sorted(group))
        support = sum(counts[i] for i in group)
        representative = max(members, key=lambda m: (candidates[m], -members.index(m)))
        if support >= cfg.min_support:
            clusters.append(SubgroupCluster(members=members,
                                            representative=representative,
                                            support=support))
    clusters.sort(key=lambda c: -c.support)
    return clusters


ASPECT_PREDICATES = frozenset({"have", "contain", "be assembled of", "be composed of"})
_ASPECT_PREP_PREDICATES = {"be assembled": "of", "be composed": "of"}


def _aspect_predicate_match(extraction: Extraction) -> bool:
    predicate = extraction.predicate
    if predicate in ASPECT_PREDICATES:
        return True
    prep = _ASPECT_PREP_PREDICATES.get(predicate)
    return prep is not None and extraction.object.split()[:1] == [prep]


def _trailing_noun_term(tokens: Sequence[ObjectToken]) -> str | None:
    """The compound noun ending at the object head; adjectives are dropped."""
    head_pos = next((i for i, t in enumerate(tokens) if t.role == "head"), None)
    if head_pos is None or tokens[head_pos].upos not in {"NOUN", "PROPN"}:
        return None
    parts = [tokens[head_pos].lemma]
    for t in reversed(tokens[:head_pos]):
        if t.role == "compound" and t.upos in {"NOUN", "PROPN"}:
            parts.insert(0, t.form)
        else:
            break
    return " ".join(parts)


def collect_aspects(chunks: Sequence[ChunkOccurrence],
                    triples: Sequence[Extraction], s0: str,
                    lex: Lexicon) -> dict[str, int]:
    """Aspect terms with their support: possessive chunks whose possessor is a
    lemma of the subject, and objects of have/contain-style predicates."""
    lemmas = lemmas_of(s0, lex)
    aspects: dict[str, int] = {}

    def add(term: str | None, count: int):
        if not term or term in lemmas:
            return
        aspects[term] = aspects.get(term, 0) + count

    for occ in aggregate_chunks(chunks):
        if occ.possessor is None or occ.possessor not in lemmas:
            continue
        tokens = occ.text.split()
        if occ.pos and len(occ.pos) == len(tokens):
            kept = []
            for token, pos in zip(reversed(tokens), reversed(occ.pos)):
                if pos in {"NOUN", "PROPN"}:
                    kept.insert(0, token)
                else:
                    break
            term = " ".join(kept)
        else:
            term = occ.text
        add(term, occ.count)

    for extraction in triples:
        if extraction.subject not in lemmas:
            continue
        if not _aspect_predicate_match(extraction):
            continue
        add(_trailing_noun_term(extraction.object_tokens), 1)
    return aspects


def aspect_subject_name(s0: str, term: str) -> str:
    if term == s0 or term.startswith(s0 + " "):
        return term
    return f"{s0} {term}"


def _match_aspect_term(head_lemma: str, tokens: Sequence[ObjectToken],
                       aspects: Mapping[str, int]) -> str | None:
    candidates = [t for t in aspects if t.split()[-1] == head_lemma]
    if not candidates:
        return None
    lemmas = [t.lemma for t in tokens]
    suffix_matches = [
        t for t in candidates
        if len(t.split()) <= len(lemmas) and lemmas[-len(t.split()):] == t.split()
    ]
    pool = suffix_matches or candidates
    return max(pool, key=lambda t: (len(t.split()), -list(aspects).index(t)))


def _typed_adverb_facet(value: str, subject: str, obj: str) -> ExtractedFacet:
    key = type_facet_heuristic(FacetQuery(
        subject=subject, predicate="be", object=obj, facet_value=value))
    return ExtractedFacet(value=value, origin="adverb-mod", key=key.value,
                          head_pos="ADV", head_lemma=value.split()[-1])


def _adjective_rewrites(extraction: Extraction, s0: str,
                        aspects: Mapping[str, int]) -> list[tuple[str, Extraction]]:
    """Case: subject is the concept, object is adjective(s) + aspect head.
    Rewritten to <s0 term, be, adj> with adjective adverbs as facets."""
    tokens = extraction.object_tokens
    head = next((t for t in tokens if t.role == "head"), None)
    if head is None or head.upos not in {"NOUN", "PROPN"}:
        return []
    term = _match_aspect_term(head.lemma, tokens, aspects)
    if term is None:
        return []
    adjectives = [t for t in tokens if t.role == "amod" and t.upos == "ADJ"]
    if not adjectives:
        return []
    name = aspect_subject_name(s0, term)
    adverb_values = [t.form for t in tokens if t.role == "adv_of_amod"]
    adverb_values += [f.value for f in extraction.facets if f.object_adverb]
    out = []
    for adjective in adjectives:
        facets = tuple(_typed_adverb_facet(v, name, adjective.lemma)
                       for v in adverb_values)
        out.append((term, Extraction(
            subject=name, predicate="be", object=adjective.lemma,
            surface_subject="", surface_predicate="", surface_object="",
            facets=facets, subject_is_pronoun=False, object_tokens=(),
            doc_id=extraction.doc_id, sentence_index=extraction.sentence_index)))
    return out


def _chunk_rewrites(chunk: ChunkOccurrence, s0: str,
                    aspects: Mapping[str, int]) -> list[tuple[str, Extraction, int]]:
    """Case: possessive + adjective + aspect chunk ("elephant's long trunks")."""
    if chunk.pos is None:
        return []
    tokens = chunk.text.split()
    if len(chunk.pos) != len(tokens):
        return []
    cut = len(tokens)
    while cut > 0 and chunk.pos[cut - 1] in {"NOUN", "PROPN"}:
        cut -= 1
    term_tokens = tokens[cut:]
    lead = tokens[:cut]
    lead_pos = chunk.pos[:cut]
    if not term_tokens or not lead:
        return []
    if any(pos not in {"ADJ", "ADV"} for pos in lead_pos) or "ADJ" not in lead_pos:
        return []
    term = " ".join(term_tokens)
    if term not in aspects:
        return []
    name = aspect_subject_name(s0, term)
    adverbs = [tok for tok, pos in zip(lead, lead_pos) if pos == "ADV"]
    out = []
    for adjective, pos in zip(lead, lead_pos):
        if pos != "ADJ":
            continue
        facets = tuple(_typed_adverb_facet(v, name, adjective) for v in adverbs)
        out.append((term, Extraction(
            subject=name, predicate="be", object=adjective,
            surface_subject="", surface_predicate="", surface_object="",
            facets=facets, subject_is_pronoun=False, object_tokens=(),
            doc_id="", sentence_index=0), chunk.count))
    return out


def route_assertions(assertions: Sequence[Extraction], s0: str,
                     subgroups: Sequence[SubgroupCluster],
                     aspects: Mapping[str, int], lex: Lexicon,
                     chunks: Sequence[ChunkOccurrence] = ()) -> RoutingResult:
    """Send every assertion to the primary subject, a subgroup or an aspect;
    everything else is dropped. Adjective-object and possessive-chunk patterns
    additionally derive <aspect, be, adjective> assertions."""
    lemmas = lemmas_of(s0, lex)
    member_to_rep = {}
    for cluster in subgroups:
        for member in cluster.members:
            member_to_rep.setdefault(member, cluster.representative)
    aspect_names = {aspect_subject_name(s0, term): term for term in aspects}

    result = RoutingResult()
    for extraction in assertions:
        if extraction.subject_is_pronoun:
            result.dropped += 1
            continue
        subject = extraction.subject
        if subject in lemmas:
            result.primary.append(RoutedAssertion(
                name=s0, kind=SubjectKind.PRIMARY, parent=None,
                extraction=extraction))
            for term, rewrite in _adjective_rewrites(extraction, s0, aspects):
                result.aspect.append(RoutedAssertion(
                    name=aspect_subject_name(s0, term), kind=SubjectKind.ASPECT,
                    parent=s0, extraction=rewrite))
        elif subject in member_to_rep:
            result.subgroup.append(RoutedAssertion(
                name=member_to_rep[subject], kind=SubjectKind.SUBGROUP,
                parent=s0, extraction=extraction))
        elif subject in aspects or subject in aspect_names:
            term = aspect_names.get(subject, subject)
            result.aspect.append(RoutedAssertion(
                name=aspect_subject_name(s0, term), kind=SubjectKind.ASPECT,
                parent=s0, extraction=extraction))
        else:
            result.dropped += 1

    for chunk in chunks:
        if chunk.possessor is None or chunk.possessor not in lemmas:
            continue
        for term, rewrite, weight in _chunk_rewrites(chunk, s0, aspects):
            result.aspect.append(RoutedAssertion(
                name=aspect_subject_name(s0, term), kind=SubjectKind.ASPECT,
                parent=s0, extraction=rewrite, weight=weight))
    return result
