"""Knowledge representation: faceted assertions, subjects and KB serialization.

All types are immutable after construction and safe to share read-only across
concurrent workers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence


class KbFormatError(ValueError):
    """A KB dump does not match the expected JSON-lines layout."""

    def __init__(self, message: str, record: int | None = None):
        if record is not None:
            message = f"record {record}: {message}"
        super().__init__(message)
        self.record = record


class FacetKey(str, Enum):
    """The eight facet roles; four qualify assertion validity, four add context."""

    DEGREE = "degree"
    LOCATION = "location"
    TEMPORAL = "temporal"
    OTHER_QUALITY = "other-quality"
    CAUSE = "cause"
    MANNER = "manner"
    PURPOSE = "purpose"
    TRANSITIVE_OBJECT = "transitive-object"

    @classmethod
    def parse(cls, label: str) -> "FacetKey":
        try:
            return cls(label)
        except ValueError:
            raise ValueError(f"unknown facet key: {label!r}") from None

    @property
    def qualifies_validity(self) -> bool:
        return self in _VALIDITY_KEYS


_VALIDITY_KEYS = frozenset({
    FacetKey.DEGREE, FacetKey.LOCATION, FacetKey.TEMPORAL, FacetKey.OTHER_QUALITY,
})


@dataclass(frozen=True)
class Facet:
    """A typed qualifier (key, value) with the number of supporting extractions.

    ``head_pos``/``head_lemma`` describe the value's head token when the facet
    came out of a parse; they steer facet-value clustering and are not part of
    the wire format.
    """

    key: FacetKey
    value: str
    frequency: int = 1
    head_pos: str | None = None
    head_lemma: str | None = None

    def __post_init__(self):
        if not self.value.strip():
            raise ValueError("facet value must be non-empty")
        if self.frequency < 1:
            raise ValueError("facet frequency must be >= 1")


class SubjectKind(str, Enum):
    PRIMARY = "primary"
    SUBGROUP = "subgroup"
    ASPECT = "aspect"


@dataclass(frozen=True)
class SubjectEntry:
    """A KB subject: a primary concept, or a subgroup/aspect of one."""

    name: str
    kind: SubjectKind
    parent: str | None = None
    support: int = 1

    def __post_init__(self):
        if not self.name.strip():
            raise ValueError("subject name must be non-empty")
        if self.kind is SubjectKind.PRIMARY:
            if self.parent is not None:
                raise ValueError("primary subjects have no parent")
        elif self.parent is None:
            raise ValueError(f"{self.kind.value} subject needs a parent")
        if self.kind is SubjectKind.SUBGROUP and len(self.name.split()) >= 5:
            raise ValueError("subgroup names must have fewer than 5 words")
        if self.support < 1:
            raise ValueError("support must be >= 1")


@dataclass(frozen=True)
class FacetedAssertion:
    """The (subject, predicate, object, facets) quadruple.

    Facet words never remain inside ``predicate``/``object``; the extractor
    excises facet spans before the assertion is built. Multiple facets may
    share a key. ``frequency`` counts merged raw extractions.
    """

    subject: str
    predicate: str
    object: str
    facets: tuple[Facet, ...] = ()
    surface_subject: str = ""
    surface_predicate: str = ""
    surface_object: str = ""
    frequency: int = 1
    source_doc_ids: frozenset[str] = frozenset()

    def __post_init__(self):
        for name in ("subject", "predicate", "object"):
            if not getattr(self, name).strip():
                raise ValueError(f"assertion {name} must be non-empty")
        if self.frequency < 1:
            raise ValueError("assertion frequency must be >= 1")

    def with_facets(self, facets: Sequence[Facet]) -> "FacetedAssertion":
        return replace(self, facets=tuple(facets))


@dataclass(frozen=True)
class KnowledgeBase:
    """Subjects plus per-subject assertion sequences in KB-rank order.

    Rank = position in the frequency-sorted sequence (descending, ties keep
    first-seen order).
    """

    subjects: Mapping[str, SubjectEntry]
    assertions: Mapping[str, tuple[FacetedAssertion, ...]]

    def __post_init__(self):
        for name, seq in self.assertions.items():
            if name not in self.subjects:
                raise ValueError(f"assertions for unknown subject {name!r}")
            freqs = [a.frequency for a in seq]
            if any(f1 < f2 for f1, f2 in zip(freqs, freqs[1:])):
                raise ValueError(f"assertions for {name!r} not frequency-sorted")

    @classmethod
    def from_pools(
        cls,
        entries: Iterable[SubjectEntry],
        pools: Mapping[str, Sequence[FacetedAssertion]],
    ) -> "KnowledgeBase":
        """Build a KB, sorting each pool by frequency (stable on ties)."""
        subjects = {e.name: e for e in entries}
        assertions = {
            name: tuple(sorted(pool, key=lambda a: -a.frequency))
            for name, pool in pools.items()
            if pool
        }
        return cls(subjects=subjects, assertions=assertions)

    def ranked(self, subject: str) -> tuple[FacetedAssertion, ...]:
        return self.assertions.get(subject, ())

    def iter_ranked(self) -> Iterator[tuple[SubjectEntry, int, FacetedAssertion]]:
        """Yield (entry, rank, assertion) in subject insertion order."""
        for name, entry in self.subjects.items():
            for rank, assertion in enumerate(self.assertions.get(name, ())):
                yield entry, rank, assertion


def _facet_to_json(facet: Facet) -> dict:
    return {"key": facet.key.value, "value": facet.value, "frequency": facet.frequency}


def _facet_from_json(obj: dict) -> Facet:
    return Facet(key=FacetKey.parse(obj["key"]), value=obj["value"],
                 frequency=int(obj["frequency"]))


def save_kb(kb: KnowledgeBase, path: str | Path) -> None:
    """Write a KB as JSON lines: one header record, then one record per assertion."""
    with open(path, "w", encoding="utf-8") as fh:
        header = {"subjects": [
            {"name": e.name, "kind": e.kind.value, "parent": e.parent,
             "support": e.support}
            for e in kb.subjects.values()
        ]}
        fh.write(json.dumps(header, ensure_ascii=False) + "\n")
        for entry, _rank, a in kb.iter_ranked():
            record = {
                "subject": a.subject,
                "kind": entry.kind.value,
                "parent": entry.parent,
                "predicate": a.predicate,
                "object": a.object,
                "facets": [_facet_to_json(f) for f in a.facets],
                "frequency": a.frequency,
                "surface": {"s": a.surface_subject, "p": a.surface_predicate,
                            "o": a.surface_object},
                "sources": sorted(a.source_doc_ids),
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def load_kb(path: str | Path) -> KnowledgeBase:
    """Load a KB dump; raises :class:`KbFormatError` with the offending record index."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise KbFormatError("empty KB dump (missing header record)")
    try:
        header = json.loads(lines[0])
        entries = [
            SubjectEntry(name=s["name"], kind=SubjectKind(s["kind"]),
                         parent=s.get("parent"), support=int(s.get("support", 1)))
            for s in header["subjects"]
        ]
    except (KeyError, ValueError, TypeError) as exc:
        raise KbFormatError(f"bad header: {exc}", record=1) from exc
    subjects = {e.name: e for e in entries}
    pools: dict[str, list[FacetedAssertion]] = {}
    for index, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            surface = obj.get("surface", {})
            assertion = FacetedAssertion(
                subject=obj["subject"],
                predicate=obj["predicate"],
                object=obj["object"],
                facets=tuple(_facet_from_json(f) for f in obj["facets"]),
                surface_subject=surface.get("s", ""),
                surface_predicate=surface.get("p", ""),
                surface_object=surface.get("o", ""),
                frequency=int(obj["frequency"]),
                source_doc_ids=frozenset(obj.get("sources", [])),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise KbFormatError(str(exc), record=index) from exc
        if assertion.subject not in subjects:
            raise KbFormatError(
                f"assertion subject {assertion.subject!r} missing from header",
                record=index)
        pools.setdefault(assertion.subject, []).append(assertion)
    assertions = {name: tuple(pool) for name, pool in pools.items()}
    return KnowledgeBase(subjects=subjects, assertions=assertions)
