"""Rule-based open information extraction over dependency parses.

Every verb is a candidate predicate; subjects, objects and facet values are
found through grammatical relations (Clear-style labels). On top of the base
rules sit six refinements: conjunction splitting for objects and facets,
empty-object repair from prepositional facets, exemplification expansion
("like", "such as", "including"), object-adverb facets, pronoun-subject
resolution through coreference, and subject/predicate normalization.

Per-document extraction is pure and independent; documents can be processed by
parallel workers.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .parsing import ParsedDocument, ParsedSentence, ParsedToken
from .textutil import normalize_phrase, smart_join

SUBJECT_DEPS = ("nsubj", "nsubjpass", "csubj")
# One assertion per object-edge child; clausal children count only when they
# carry no facet subordinator.
OBJECT_DEPS = ("dobj", "iobj", "dative", "attr", "acomp", "oprd", "nmod")
CLAUSAL_DEPS = ("ccomp", "advcl", "xcomp")
CONSTITUENT_DEPS = ("compound", "nummod", "det", "advmod", "amod", "poss", "quantmod")
PREDICATE_DEPS = ("aux", "auxpass", "neg", "prt", "mwe")

FACET_SUBORDINATORS = frozenset({
    "to", "because", "since", "although", "though", "while", "when",
    "whenever", "if", "unless", "until", "so",
})
NOMINATIVE_PRONOUNS = frozenset({"they", "he", "she", "it", "we"})
PLAIN_AUX_LEMMAS = frozenset({
    "be", "have", "do", "will", "would", "shall", "should", "can", "could",
    "may", "might", "must",
})

ORIGIN_ADVERB = "adverb-mod"
ORIGIN_PREPOSITION = "preposition"
ORIGIN_CLAUSAL = "clausal"


@dataclass(frozen=True)
class FacetSpan:
    """A facet value as token indices plus its syntactic origin.

    ``anchor`` is the attachment token (the preposition, adverb or clause
    mark position used for distance measures); ``head`` is the content head
    (prepositional object, the adverb itself, or the clause verb).
    """

    tokens: tuple[int, ...]
    origin: str
    anchor: int
    head: int
    object_adverb: bool = False


@dataclass(frozen=True)
class RawAssertion:
    subject: tuple[int, ...]
    predicate: tuple[int, ...]
    object: tuple[int, ...]
    facets: tuple[FacetSpan, ...]
    subject_head: int
    predicate_head: int
    object_head: int | None
    subject_override: str | None = None
    conjunctions_split: bool = False


@dataclass(frozen=True)
class ObjectToken:
    form: str
    lemma: str
    upos: str
    role: str


@dataclass(frozen=True)
class ExtractedFacet:
    value: str
    origin: str
    key: str | None = None
    head_pos: str | None = None
    head_lemma: str | None = None
    post_prep_pos: str | None = None
    object_adverb: bool = False


@dataclass(frozen=True)
class Extraction:
    """A normalized assertion, not yet typed or routed."""

    subject: str
    predicate: str
    object: str
    surface_subject: str
    surface_predicate: str
    surface_object: str
    facets: tuple[ExtractedFacet, ...]
    subject_is_pronoun: bool
    object_tokens: tuple[ObjectToken, ...]
    doc_id: str = ""
    sentence_index: int = 0


@dataclass(frozen=True)
class ChunkOccurrence:
    """A normalized noun chunk; ``possessor`` is set for possessive chunks
    (resolved through coreference when the possessor is a pronoun)."""

    text: str
    count: int = 1
    is_named_entity: bool = False
    possessor: str | None = None
    pos: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("chunk count must be >= 1")


def _expand_constituent(sentence: ParsedSentence, head: int,
                        include_of_pp: bool = False) -> list[int]:
    """Head word plus related words reachable through constituent edges."""
    out = {head}
    stack = [head]
    while stack:
        node = stack.pop()
        for child in sentence.children(node):
            if child.i in out:
                continue
            take = child.deprel in CONSTITUENT_DEPS
            if not take and child.deprel == "case":
                take = True
            if not take and include_of_pp and child.deprel == "prep" \
                    and child.lemma.lower() == "of":
                out.update(sentence.subtree(child.i))
                continue
            if take:
                out.add(child.i)
                stack.append(child.i)
    return sorted(out)


def _find_subject(sentence: ParsedSentence, predicate: ParsedToken,
                  depth: int = 0) -> ParsedToken | None:
    if depth > 6:
        return None
    subjects = sentence.children(predicate.i, *SUBJECT_DEPS)
    if subjects:
        subject = subjects[0]
        if subject.upos == "PRON" and subject.lemma.lower() in {"that", "which", "who"} \
                and predicate.deprel in {"acl", "relcl"} and predicate.head:
            return sentence.token(predicate.head)
        return subject
    if predicate.deprel in {"acl", "relcl"} and predicate.head:
        return sentence.token(predicate.head)
    if predicate.deprel in {"advcl", "xcomp", "conj", "ccomp"} and predicate.head:
        parent = sentence.token(predicate.head)
        if parent.upos in {"VERB", "AUX"}:
            return _find_subject(sentence, parent, depth + 1)
    return None


def _clause_subordinator(sentence: ParsedSentence, clause_head: int) -> str | None:
    for child in sentence.children(clause_head, "mark", "aux"):
        if child.lemma.lower() in FACET_SUBORDINATORS:
            return child.lemma.lower()
    return None


def _example_cue_preps(sentence: ParsedSentence, head: int) -> list[ParsedToken]:
    """Prepositions introducing examples: "like", "such as", "including"."""
    cues = []
    for prep in sentence.children(head, "prep"):
        form = prep.form.lower()
        lemma = prep.lemma.lower()
        if form == "like" or lemma == "like":
            cues.append(prep)
        elif form == "including" or lemma in {"include", "including"}:
            cues.append(prep)
        elif form == "as" or lemma == "as":
            has_such = any(c.form.lower() == "such" for c in sentence.children(prep.i))
            if not has_such and prep.i > 1:
                has_such = sentence.token(prep.i - 1).form.lower() == "such"
            if has_such:
                cues.append(prep)
    return cues


def _prep_facet(sentence: ParsedSentence, prep: ParsedToken) -> FacetSpan:
    span = tuple(sentence.subtree(prep.i))
    pobjs = sentence.children(prep.i, "pobj", "pcomp")
    head = pobjs[0].i if pobjs else prep.i
    return FacetSpan(tokens=span, origin=ORIGIN_PREPOSITION, anchor=prep.i, head=head)


def _adverb_facet(sentence: ParsedSentence, adverb: ParsedToken,
                  object_adverb: bool = False) -> FacetSpan:
    span = tuple(_expand_constituent(sentence, adverb.i))
    return FacetSpan(tokens=span, origin=ORIGIN_ADVERB, anchor=adverb.i,
                     head=adverb.i, object_adverb=object_adverb)


def _clausal_facet(sentence: ParsedSentence, clause: ParsedToken) -> FacetSpan:
    span = tuple(sentence.subtree(clause.i))
    return FacetSpan(tokens=span, origin=ORIGIN_CLAUSAL, anchor=span[0],
                     head=clause.i)


def _object_prep_facets(sentence: ParsedSentence, obj_head: int) -> list[FacetSpan]:
    # Clear-style parses hang copular-complement modifiers off the complement
    # ("active during evening"), so the object head contributes prepositional
    # facets as well; of-phrases stay inside the object span instead.
    cues = {c.i for c in _example_cue_preps(sentence, obj_head)}
    facets = []
    for prep in sentence.children(obj_head, "prep"):
        if prep.i in cues or prep.lemma.lower() == "of":
            continue
        facets.append(_prep_facet(sentence, prep))
    return facets


def extract_raw(sentence: ParsedSentence) -> list[RawAssertion]:
    """Base rules: one assertion per (predicate verb, object edge), plus an
    empty-object assertion for verbs with no object edge at all."""
    assertions: list[RawAssertion] = []
    for token in sentence.tokens:
        if token.upos not in {"VERB", "AUX"} or token.deprel in {"aux", "auxpass"}:
            continue
        subject = _find_subject(sentence, token)
        if subject is None:
            continue
        subject_span = tuple(_expand_constituent(sentence, subject.i))
        predicate_span = tuple(sorted(
            [token.i] + [c.i for c in sentence.children(token.i, *PREDICATE_DEPS)]))

        facets: list[FacetSpan] = []
        for adverb in sentence.children(token.i, "advmod"):
            if adverb.upos == "ADV":
                facets.append(_adverb_facet(sentence, adverb))
        verb_cues = {c.i for c in _example_cue_preps(sentence, token.i)}
        for prep in sentence.children(token.i, "prep", "agent"):
            if prep.i not in verb_cues:
                facets.append(_prep_facet(sentence, prep))

        objects: list[ParsedToken] = list(sentence.children(token.i, *OBJECT_DEPS))
        for clause in sentence.children(token.i, *CLAUSAL_DEPS):
            if clause.deprel == "xcomp" and clause.upos not in {"VERB", "AUX"}:
                objects.append(clause)      # non-verbal xcomp behaves like oprd
            elif _clause_subordinator(sentence, clause.i):
                facets.append(_clausal_facet(sentence, clause))
            else:
                objects.append(clause)
        objects.sort(key=lambda t: t.i)

        base = RawAssertion(
            subject=subject_span, predicate=predicate_span, object=(),
            facets=tuple(facets), subject_head=subject.i,
            predicate_head=token.i, object_head=None)
        if not objects:
            assertions.append(base)
            continue
        for obj in objects:
            if obj.deprel in CLAUSAL_DEPS and obj.upos in {"VERB", "AUX"}:
                span = tuple(sentence.subtree(obj.i))
                extra: list[FacetSpan] = []
            else:
                span = tuple(_expand_constituent(sentence, obj.i, include_of_pp=True))
                extra = _object_prep_facets(sentence, obj.i)
            assertions.append(replace(
                base, object=span, object_head=obj.i,
                facets=tuple(facets) + tuple(extra)))
    return assertions


def _conj_chain(sentence: ParsedSentence, head: int) -> list[int]:
    chain = []
    stack = [head]
    while stack:
        node = stack.pop()
        for conj in sentence.children(node, "conj"):
            chain.append(conj.i)
            stack.append(conj.i)
    return sorted(chain)


def _splittable(sentence: ParsedSentence, head: int, chain: list[int]) -> bool:
    """Conjuncts must be connected by "and" or "or" to be split apart."""
    coordinators = []
    for node in [head] + chain:
        coordinators.extend(sentence.children(node, "cc"))
    if not coordinators:
        return False
    return all(c.lemma.lower() in {"and", "or"} for c in coordinators)


def split_conjunctions(assertion: RawAssertion,
                       sentence: ParsedSentence) -> list[RawAssertion]:
    """Break conjunctive objects and facet values into separate assertions
    and facets. Idempotent: outputs are marked and pass through unchanged."""
    if assertion.conjunctions_split:
        return [assertion]
    results = [assertion]
    if assertion.object_head is not None:
        chain = _conj_chain(sentence, assertion.object_head)
        if chain and _splittable(sentence, assertion.object_head, chain):
            results = [assertion]
            for conjunct in chain:
                span = tuple(_expand_constituent(sentence, conjunct,
                                                 include_of_pp=True))
                results.append(replace(assertion, object=span, object_head=conjunct))

    out = []
    for item in results:
        new_facets: list[FacetSpan] = []
        for facet in item.facets:
            if facet.origin == ORIGIN_PREPOSITION and facet.head != facet.anchor:
                chain = _conj_chain(sentence, facet.head)
                if chain and _splittable(sentence, facet.head, chain):
                    first = tuple(sorted(
                        {facet.anchor, *_expand_constituent(sentence, facet.head)}))
                    new_facets.append(replace(facet, tokens=first))
                    for conjunct in chain:
                        span = tuple(sorted(
                            {facet.anchor, *_expand_constituent(sentence, conjunct)}))
                        new_facets.append(replace(facet, tokens=span, head=conjunct))
                    continue
            elif facet.origin == ORIGIN_ADVERB:
                chain = _conj_chain(sentence, facet.head)
                if chain and _splittable(sentence, facet.head, chain):
                    new_facets.append(replace(
                        facet, tokens=tuple(_expand_constituent(sentence, facet.head))))
                    for conjunct in chain:
                        new_facets.append(replace(
                            facet,
                            tokens=tuple(_expand_constituent(sentence, conjunct)),
                            anchor=conjunct, head=conjunct))
                    continue
            new_facets.append(facet)
        out.append(replace(item, facets=tuple(new_facets),
                           conjunctions_split=True))
    return out


def repair_empty_object(assertion: RawAssertion) -> RawAssertion | None:
    """Promote the nearest prepositional facet after the predicate into the
    object slot; assertions that stay objectless are discarded."""
    if assertion.object:
        return assertion
    candidates = [
        (facet.anchor - assertion.predicate_head, position, facet)
        for position, facet in enumerate(assertion.facets)
        if facet.origin == ORIGIN_PREPOSITION and facet.anchor > assertion.predicate_head
    ]
    if not candidates:
        return None
    _, position, chosen = min(candidates, key=lambda item: (item[0], item[1]))
    remaining = tuple(f for index, f in enumerate(assertion.facets)
                      if index != position)
    return replace(assertion, object=chosen.tokens, object_head=chosen.head,
                   facets=remaining)


def expand_examples(assertion: RawAssertion,
                    sentence: ParsedSentence) -> list[RawAssertion]:
    """Rewrite "such as"/"like"/"including" objects into one assertion per
    listed example, dropping the generic head."""
    if assertion.object_head is None:
        return [assertion]
    cues = _example_cue_preps(sentence, assertion.object_head)
    if not cues:
        cues = _example_cue_preps(sentence, assertion.predicate_head)
    for cue in cues:
        examples = sentence.children(cue.i, "pobj")
        if not examples:
            continue
        heads = [examples[0].i] + _conj_chain(sentence, examples[0].i)
        out = []
        for head in sorted(heads):
            span = tuple(_expand_constituent(sentence, head))
            out.append(replace(assertion, object=span, object_head=head))
        return out
    return [assertion]


def object_adverb_facets(assertion: RawAssertion,
                         sentence: ParsedSentence) -> RawAssertion:
    """Convert adverb modifiers inside the object into facet values: direct
    advmod children of the object head, and the adverb of an
    adverb+adjective+noun phrase."""
    if assertion.object_head is None:
        return assertion
    object_set = set(assertion.object)
    removed: set[int] = set()
    facets = list(assertion.facets)
    adverbs: list[ParsedToken] = [
        c for c in sentence.children(assertion.object_head, "advmod")
        if c.upos == "ADV" and c.i in object_set
    ]
    for amod in sentence.children(assertion.object_head, "amod"):
        adverbs.extend(c for c in sentence.children(amod.i, "advmod")
                       if c.upos == "ADV" and c.i in object_set)
    for adverb in sorted(adverbs, key=lambda t: t.i):
        facet = _adverb_facet(sentence, adverb, object_adverb=True)
        removed.update(facet.tokens)
        facets.append(facet)
    if not removed:
        return assertion
    new_object = tuple(i for i in assertion.object if i not in removed)
    if not new_object:
        return assertion
    return replace(assertion, object=new_object, facets=tuple(facets))


def extract_sentence(sentence: ParsedSentence) -> list[RawAssertion]:
    """The full per-sentence chain: extract, split conjunctions, repair
    empty objects, expand examples, facetize object adverbs."""
    out: list[RawAssertion] = []
    for raw in extract_raw(sentence):
        for split in split_conjunctions(raw, sentence):
            repaired = repair_empty_object(split)
            if repaired is None:
                continue
            for expanded in expand_examples(repaired, sentence):
                out.append(object_adverb_facets(expanded, sentence))
    return out


def resolve_subjects(assertions: Sequence[tuple[int, RawAssertion]],
                     doc: ParsedDocument) -> list[tuple[int, RawAssertion]]:
    """Replace nominative pronoun subjects with the representative mention of
    their paragraph-local coreference chain."""
    resolved = []
    for sent_index, assertion in assertions:
        sentence = doc.sentences[sent_index]
        subject = sentence.token(assertion.subject_head)
        if (len(assertion.subject) == 1
                and subject.form.lower() in NOMINATIVE_PRONOUNS
                and assertion.subject_override is None):
            chain = doc.chain_for(sent_index, subject.i)
            if chain is not None:
                assertion = replace(assertion,
                                    subject_override=doc.mention_text(chain.rep))
        resolved.append((sent_index, assertion))
    return resolved


_POSSESSIVE_FORMS = {"'s", "'", "’s", "’"}


def _is_possessive_marker(token: ParsedToken) -> bool:
    return token.form in _POSSESSIVE_FORMS


def _normalize_span(sentence: ParsedSentence, span: Iterable[int],
                    head: int) -> str:
    """Subject-style normalization: determiners, punctuation, possessive
    markers and pronoun possessors dropped; head noun lemmatized; lowercase."""
    parts = []
    for i in sorted(span):
        token = sentence.token(i)
        if token.upos == "PUNCT" or _is_possessive_marker(token):
            continue
        if token.deprel == "det":
            continue
        if token.deprel == "poss" and token.upos == "PRON":
            continue
        parts.append(token.lemma.lower() if i == head else token.form.lower())
    return " ".join(parts)


def _normalize_object(sentence: ParsedSentence, span: Iterable[int]) -> str:
    parts = []
    for i in sorted(span):
        token = sentence.token(i)
        if token.upos == "PUNCT" or _is_possessive_marker(token):
            continue
        parts.append(token.form.lower())
    return " ".join(parts)


def _normalize_predicate(sentence: ParsedSentence, span: Sequence[int],
                         head: int) -> str:
    tokens = [sentence.token(i) for i in sorted(span)]
    passive = any(t.deprel == "auxpass" for t in tokens)
    parts: list[str] = []
    emitted_be = False
    for token in tokens:
        if token.deprel in {"aux", "auxpass"}:
            if passive and not emitted_be:
                parts.append("be")
                emitted_be = True
            continue
        if token.i == head:
            if passive:
                parts.append(token.form.lower())
            else:
                parts.append(token.lemma.lower())
        elif token.upos != "PUNCT":
            parts.append(token.form.lower())
    return " ".join(parts)


def _facet_value(sentence: ParsedSentence, facet: FacetSpan) -> ExtractedFacet:
    tokens = [sentence.token(i) for i in sorted(facet.tokens)]
    value = smart_join([t.form.lower() for t in tokens if t.upos != "PUNCT"])
    head = sentence.token(facet.head)
    post_prep_pos = None
    if len(tokens) >= 2 and tokens[0].upos in {"ADP", "PART", "SCONJ"}:
        post_prep_pos = tokens[1].upos
    return ExtractedFacet(
        value=value, origin=facet.origin, head_pos=head.upos,
        head_lemma=head.lemma.lower(), post_prep_pos=post_prep_pos,
        object_adverb=facet.object_adverb)


def _object_token_roles(sentence: ParsedSentence, assertion: RawAssertion) -> tuple[ObjectToken, ...]:
    if assertion.object_head is None:
        return ()
    head = assertion.object_head
    amods = {c.i for c in sentence.children(head, "amod")}
    out = []
    for i in assertion.object:
        token = sentence.token(i)
        if token.upos == "PUNCT" or _is_possessive_marker(token):
            continue
        if i == head:
            role = "head"
        elif token.head == head and token.deprel in {
                "amod", "advmod", "det", "compound", "nummod", "poss"}:
            role = token.deprel
        elif token.deprel == "advmod" and token.head in amods:
            role = "adv_of_amod"
        else:
            role = "other"
        out.append(ObjectToken(form=token.form.lower(), lemma=token.lemma.lower(),
                               upos=token.upos, role=role))
    return tuple(out)


def normalize(assertion: RawAssertion, sentence: ParsedSentence,
              doc_id: str = "", sentence_index: int = 0) -> Extraction:
    """Produce the normalized assertion: determiners and punctuation stripped
    from subjects, head nouns lemmatized, main verbs put in infinitive form,
    facet words kept out of predicate and object."""
    if assertion.subject_override is not None:
        subject = normalize_phrase(assertion.subject_override)
        surface_subject = assertion.subject_override
        is_pronoun = False
    else:
        subject = _normalize_span(sentence, assertion.subject, assertion.subject_head)
        surface_subject = sentence.span_text(assertion.subject)
        head = sentence.token(assertion.subject_head)
        is_pronoun = len(assertion.subject) == 1 and head.upos == "PRON"
        if not subject:
            subject = head.lemma.lower()
    predicate = _normalize_predicate(sentence, assertion.predicate,
                                     assertion.predicate_head)
    obj = _normalize_object(sentence, assertion.object)
    facets = tuple(_facet_value(sentence, f) for f in assertion.facets)
    return Extraction(
        subject=subject,
        predicate=predicate,
        object=obj,
        surface_subject=surface_subject,
        surface_predicate=sentence.span_text(assertion.predicate),
        surface_object=sentence.span_text(assertion.object),
        facets=facets,
        subject_is_pronoun=is_pronoun,
        object_tokens=_object_token_roles(sentence, assertion),
        doc_id=doc_id,
        sentence_index=sentence_index,
    )


def _chunk_head(sentence: ParsedSentence, chunk_indices: list[int]) -> int:
    inside = set(chunk_indices)
    for i in chunk_indices:
        if sentence.token(i).head not in inside:
            return i
    return chunk_indices[-1]


def harvest_chunks(doc: ParsedDocument) -> list[ChunkOccurrence]:
    """Noun chunk occurrences, normalized like triple subjects, with possessive
    structure resolved (pronoun possessors through coreference)."""
    occurrences = []
    for sent_index, sentence in enumerate(doc.sentences):
        for chunk in sentence.noun_chunks:
            indices = list(chunk.indices())
            head = _chunk_head(sentence, indices)
            possessor = None
            possessor_tokens: set[int] = set()
            for token in sentence.children(head, "poss"):
                if token.i not in indices:
                    continue
                possessor_tokens = {
                    i for i in _expand_constituent(sentence, token.i)
                    if i in set(indices)}
                if token.upos == "PRON":
                    chain = doc.chain_for(sent_index, token.i)
                    if chain is not None:
                        possessor = normalize_phrase(doc.mention_text(chain.rep))
                    else:
                        possessor = token.form.lower()
                else:
                    possessor = _normalize_span(
                        sentence, possessor_tokens, token.i)
                break
            kept = []
            for i in indices:
                token = sentence.token(i)
                if i in possessor_tokens or token.upos == "PUNCT":
                    continue
                if _is_possessive_marker(token) or token.deprel == "det":
                    continue
                if token.deprel == "poss" and token.upos == "PRON":
                    continue
                kept.append(i)
            if not kept:
                continue
            text_head = head if head in kept else kept[-1]
            text = _normalize_span(sentence, kept, text_head)
            if not text:
                continue
            pos = tuple(sentence.token(i).upos for i in kept)
            occurrences.append(ChunkOccurrence(
                text=text, count=1, is_named_entity=chunk.is_entity,
                possessor=possessor, pos=pos))
    return occurrences


def extract_document(doc: ParsedDocument) -> tuple[list[Extraction], list[ChunkOccurrence]]:
    """Run the full chain over one document: per-sentence extraction, pronoun
    resolution, normalization, and noun-chunk harvesting."""
    located: list[tuple[int, RawAssertion]] = []
    for sent_index, sentence in enumerate(doc.sentences):
        for assertion in extract_sentence(sentence):
            located.append((sent_index, assertion))
    located = resolve_subjects(located, doc)
    extractions = [
        normalize(assertion, doc.sentences[sent_index], doc_id=doc.id,
                  sentence_index=sent_index)
        for sent_index, assertion in located
    ]
    return extractions, harvest_chunks(doc)
