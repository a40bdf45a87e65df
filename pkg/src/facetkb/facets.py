"""Facet type labeling: a deterministic heuristic plus the external-scorer path.

The heuristic is an explicit stand-in for a trained classifier and is total:
rules are tried in a fixed order, earlier rules win, and anything left over
is ``other-quality``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import FacetKey
from .scorer import LineScorer, ScorerProtocolError, ScorerTimeout
from .textutil import tokenize

COMMON_ADVERBS = frozenset({
    "very", "quite", "too", "so", "often", "never", "always", "sometimes",
    "rarely", "seldom", "almost", "much", "well", "enough", "somewhat",
    "rather", "together", "alone", "once", "twice", "even", "still",
})
TEMPORAL_PREPOSITIONS = frozenset({"during", "before", "after", "when", "while", "until"})
TEMPORAL_NOUNS = frozenset({
    "night", "nights", "morning", "mornings", "evening", "evenings",
    "afternoon", "afternoons", "noon", "midnight", "dawn", "dusk", "daytime",
    "nighttime", "winter", "spring", "summer", "autumn", "fall", "monday",
    "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday",
    "weekend", "weekends", "weekday", "weekdays", "day", "days", "week",
    "weeks", "month", "months", "year", "years", "season", "seasons",
})
LOCATIVE_PREPOSITIONS = frozenset({"in", "on", "at", "near", "inside"})
DETERMINER_LIKE = frozenset({
    "a", "an", "the", "this", "that", "these", "those", "my", "your", "his",
    "her", "its", "our", "their", "some", "any", "each", "every", "one",
    "two", "three",
})


@dataclass(frozen=True)
class FacetQuery:
    """One facet in the context of its assertion.

    ``post_prep_pos`` optionally carries the POS of the first facet token
    after a leading preposition; it separates "to a table" from "to keep
    cool" when the pipeline knows the parse.
    """

    subject: str
    predicate: str
    object: str
    facet_value: str
    post_prep_pos: str | None = None

    def __post_init__(self):
        for name in ("subject", "predicate", "object", "facet_value"):
            if not getattr(self, name).strip():
                raise ValueError(f"facet query field {name} must be non-empty")


def _is_bare_adverb(tokens: list[str]) -> bool:
    if len(tokens) != 1:
        return False
    token = tokens[0]
    return token.endswith("ly") or token in COMMON_ADVERBS


def _verb_initial_after(tokens: list[str], query: FacetQuery) -> bool:
    if query.post_prep_pos is not None:
        return query.post_prep_pos in {"VERB", "AUX"}
    return len(tokens) > 1 and tokens[1] not in DETERMINER_LIKE \
        and not tokens[1][0].isdigit()


def type_facet_heuristic(query: FacetQuery) -> FacetKey:
    """Ordered rules: bare adverb, to+verb, because/due-to, temporal words,
    with/by, to/for, locative preposition, otherwise other-quality."""
    tokens = tokenize(query.facet_value)
    if not tokens:
        return FacetKey.OTHER_QUALITY
    if _is_bare_adverb(tokens):
        return FacetKey.DEGREE
    if tokens[0] == "to" and _verb_initial_after(tokens, query):
        return FacetKey.PURPOSE
    if tokens[0] == "because" or (tokens[0] == "due" and tokens[1:2] == ["to"]):
        return FacetKey.CAUSE
    if tokens[0] in TEMPORAL_PREPOSITIONS or any(t in TEMPORAL_NOUNS for t in tokens):
        return FacetKey.TEMPORAL
    if tokens[0] in {"with", "by"}:
        return FacetKey.MANNER
    if tokens[0] in {"to", "for"}:
        return FacetKey.TRANSITIVE_OBJECT
    if tokens[0] in LOCATIVE_PREPOSITIONS:
        return FacetKey.LOCATION
    return FacetKey.OTHER_QUALITY


def type_facets_external(batch: Sequence[FacetQuery], scorer: LineScorer,
                         fallback: bool = False) -> list[FacetKey]:
    """Label a batch through the line protocol: {id, s, p, o, facet} ->
    {id, label}. Unknown labels are protocol errors; on timeout the heuristic
    answers instead when ``fallback`` is enabled."""
    if not batch:
        return []
    payloads = [
        {"id": index, "s": q.subject, "p": q.predicate, "o": q.object,
         "facet": q.facet_value}
        for index, q in enumerate(batch)
    ]
    try:
        responses = scorer.request_many(payloads)
    except ScorerTimeout:
        if fallback:
            return [type_facet_heuristic(q) for q in batch]
        raise
    keys = []
    for response in responses:
        label = response.get("label")
        try:
            keys.append(FacetKey.parse(str(label)))
        except ValueError as exc:
            raise ScorerProtocolError(
                f"facet scorer answered unknown label {label!r} "
                f"for id {response.get('id')!r}") from exc
    return keys
