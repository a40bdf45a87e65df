"""JSON-lines record formats for the intermediate stage files.

``extract`` and ``type-facets`` exchange streams of assertion and chunk
records; ``expand`` emits subject and routed records that ``consolidate``
turns into the final KB dump.
"""
from __future__ import annotations

import json
from pathlib import Path

from .extraction import ChunkOccurrence, ExtractedFacet, Extraction, ObjectToken
from .expansion import RoutedAssertion
from .model import SubjectEntry, SubjectKind


class RecordFormatError(ValueError):
    pass


def _facet_to_json(facet: ExtractedFacet) -> dict:
    out = {"value": facet.value, "origin": facet.origin}
    if facet.key is not None:
        out["key"] = facet.key
    if facet.head_pos is not None:
        out["head_pos"] = facet.head_pos
    if facet.head_lemma is not None:
        out["head_lemma"] = facet.head_lemma
    if facet.post_prep_pos is not None:
        out["post_prep_pos"] = facet.post_prep_pos
    if facet.object_adverb:
        out["object_adverb"] = True
    return out


def _facet_from_json(obj: dict) -> ExtractedFacet:
    return ExtractedFacet(
        value=obj["value"], origin=obj["origin"], key=obj.get("key"),
        head_pos=obj.get("head_pos"), head_lemma=obj.get("head_lemma"),
        post_prep_pos=obj.get("post_prep_pos"),
        object_adverb=bool(obj.get("object_adverb", False)))


def extraction_to_json(extraction: Extraction) -> dict:
    return {
        "type": "assertion",
        "subject": extraction.subject,
        "predicate": extraction.predicate,
        "object": extraction.object,
        "surface": {"s": extraction.surface_subject,
                    "p": extraction.surface_predicate,
                    "o": extraction.surface_object},
        "facets": [_facet_to_json(f) for f in extraction.facets],
        "pronoun": extraction.subject_is_pronoun,
        "object_tokens": [[t.form, t.lemma, t.upos, t.role]
                          for t in extraction.object_tokens],
        "doc": extraction.doc_id,
        "sentence": extraction.sentence_index,
    }


def extraction_from_json(obj: dict) -> Extraction:
    surface = obj.get("surface", {})
    return Extraction(
        subject=obj["subject"], predicate=obj["predicate"], object=obj["object"],
        surface_subject=surface.get("s", ""),
        surface_predicate=surface.get("p", ""),
        surface_object=surface.get("o", ""),
        facets=tuple(_facet_from_json(f) for f in obj.get("facets", ())),
        subject_is_pronoun=bool(obj.get("pronoun", False)),
        object_tokens=tuple(ObjectToken(form=t[0], lemma=t[1], upos=t[2], role=t[3])
                            for t in obj.get("object_tokens", ())),
        doc_id=obj.get("doc", ""),
        sentence_index=int(obj.get("sentence", 0)))


def chunk_to_json(chunk: ChunkOccurrence) -> dict:
    out = {"type": "chunk", "text": chunk.text, "count": chunk.count,
           "ne": chunk.is_named_entity}
    if chunk.possessor is not None:
        out["possessor"] = chunk.possessor
    if chunk.pos is not None:
        out["pos"] = list(chunk.pos)
    return out


def chunk_from_json(obj: dict) -> ChunkOccurrence:
    pos = obj.get("pos")
    return ChunkOccurrence(
        text=obj["text"], count=int(obj.get("count", 1)),
        is_named_entity=bool(obj.get("ne", False)),
        possessor=obj.get("possessor"),
        pos=tuple(pos) if pos is not None else None)


def write_stage_records(path: str | Path, extractions, chunks) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for extraction in extractions:
            fh.write(json.dumps(extraction_to_json(extraction),
                                ensure_ascii=False) + "\n")
        for chunk in chunks:
            fh.write(json.dumps(chunk_to_json(chunk), ensure_ascii=False) + "\n")


def read_stage_records(path: str | Path) -> tuple[list[Extraction], list[ChunkOccurrence]]:
    extractions: list[Extraction] = []
    chunks: list[ChunkOccurrence] = []
    for number, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            kind = obj.get("type")
            if kind == "assertion":
                extractions.append(extraction_from_json(obj))
            elif kind == "chunk":
                chunks.append(chunk_from_json(obj))
            else:
                raise ValueError(f"unknown record type {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise RecordFormatError(f"{path}:{number}: {exc}") from exc
    return extractions, chunks


def write_routed_records(path: str | Path, entries, routed) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(json.dumps({
                "type": "subject", "name": entry.name, "kind": entry.kind.value,
                "parent": entry.parent, "support": entry.support,
            }, ensure_ascii=False) + "\n")
        for item in routed:
            fh.write(json.dumps({
                "type": "routed", "name": item.name, "kind": item.kind.value,
                "parent": item.parent, "weight": item.weight,
                "assertion": extraction_to_json(item.extraction),
            }, ensure_ascii=False) + "\n")


def read_routed_records(path: str | Path) -> tuple[list[SubjectEntry], list[RoutedAssertion]]:
    entries: list[SubjectEntry] = []
    routed: list[RoutedAssertion] = []
    for number, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            kind = obj.get("type")
            if kind == "subject":
                entries.append(SubjectEntry(
                    name=obj["name"], kind=SubjectKind(obj["kind"]),
                    parent=obj.get("parent"), support=int(obj.get("support", 1))))
            elif kind == "routed":
                routed.append(RoutedAssertion(
                    name=obj["name"], kind=SubjectKind(obj["kind"]),
                    parent=obj.get("parent"),
                    extraction=extraction_from_json(obj["assertion"]),
                    weight=int(obj.get("weight", 1))))
            else:
                raise ValueError(f"unknown record type {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise RecordFormatError(f"{path}:{number}: {exc}") from exc
    return entries, routed
