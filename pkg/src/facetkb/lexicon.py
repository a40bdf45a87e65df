"""WordNet-like lexicon: synsets, hypernym/hyponym edges and antonym pairs.

The lexicon is loaded from a single JSON document so the pipeline does not
depend on any specific lexical-database release; a converter can populate the
format from a real database. Immutable after load.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable


class LexiconFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Synset:
    id: str
    lemmas: frozenset[str]
    hypernyms: frozenset[str]
    hyponyms: frozenset[str]

    def __post_init__(self):
        if not self.lemmas:
            raise ValueError(f"synset {self.id} has no lemmas")


def _lemma_key(phrase: str) -> str:
    return phrase.strip().lower().replace(" ", "_")


def _lemma_text(lemma: str) -> str:
    return lemma.replace("_", " ")


class Lexicon:
    def __init__(self, synsets: Iterable[Synset],
                 antonym_pairs: Iterable[tuple[str, str]] = ()):
        self.synsets: dict[str, Synset] = {}
        for syn in synsets:
            if syn.id in self.synsets:
                raise LexiconFormatError(f"duplicate synset id {syn.id}")
            self.synsets[syn.id] = syn
        self._symmetrize_edges()
        self.lemma_index: dict[str, set[str]] = {}
        for syn in self.synsets.values():
            for lemma in syn.lemmas:
                self.lemma_index.setdefault(_lemma_key(lemma), set()).add(syn.id)
        self.antonym_pairs: set[frozenset[str]] = {
            frozenset((a.lower(), b.lower())) for a, b in antonym_pairs
        }

    def _symmetrize_edges(self):
        # a in hyponyms(b) <=> b in hypernyms(a); complete whichever half a
        # lexicon file spelled out.
        extra_hypo: dict[str, set[str]] = {}
        extra_hyper: dict[str, set[str]] = {}
        for syn in self.synsets.values():
            for hyper in syn.hypernyms:
                if hyper in self.synsets and syn.id not in self.synsets[hyper].hyponyms:
                    extra_hypo.setdefault(hyper, set()).add(syn.id)
            for hypo in syn.hyponyms:
                if hypo in self.synsets and syn.id not in self.synsets[hypo].hypernyms:
                    extra_hyper.setdefault(hypo, set()).add(syn.id)
        for sid, add in extra_hypo.items():
            syn = self.synsets[sid]
            self.synsets[sid] = Synset(syn.id, syn.lemmas, syn.hypernyms,
                                       syn.hyponyms | add)
        for sid, add in extra_hyper.items():
            syn = self.synsets[sid]
            self.synsets[sid] = Synset(syn.id, syn.lemmas, syn.hypernyms | add,
                                       syn.hyponyms)

    def synsets_of(self, phrase: str) -> set[str]:
        return self.lemma_index.get(_lemma_key(phrase), set())

    def hypernym_levels(self, synset_id: str) -> Iterable[list[str]]:
        """Yield hypernym ids by BFS level, nearest first, ids sorted per level."""
        seen = {synset_id}
        frontier = [synset_id]
        while frontier:
            nxt: set[str] = set()
            for sid in frontier:
                syn = self.synsets.get(sid)
                if syn:
                    nxt.update(h for h in syn.hypernyms if h not in seen)
            if not nxt:
                return
            level = sorted(nxt)
            seen.update(level)
            yield level
            frontier = level

    def hyponym_closure(self, synset_id: str) -> set[str]:
        """All synsets below ``synset_id``, the synset itself included."""
        seen = {synset_id}
        frontier = [synset_id]
        while frontier:
            nxt = []
            for sid in frontier:
                syn = self.synsets.get(sid)
                if not syn:
                    continue
                for hypo in syn.hyponyms:
                    if hypo not in seen:
                        seen.add(hypo)
                        nxt.append(hypo)
            frontier = nxt
        return seen


def load_lexicon(path: str | Path) -> Lexicon:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        synsets = [
            Synset(id=s["id"], lemmas=frozenset(s["lemmas"]),
                   hypernyms=frozenset(s.get("hypernyms", ())),
                   hyponyms=frozenset(s.get("hyponyms", ())))
            for s in doc["synsets"]
        ]
        antonyms = [(a, b) for a, b in doc.get("antonyms", ())]
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise LexiconFormatError(f"bad lexicon file {path}: {exc}") from exc
    return Lexicon(synsets, antonyms)


def concept_synset(concept: str, lex: Lexicon) -> Synset | None:
    """The synset holding ``concept`` with the most lemmas; ties pick the
    lexicographically smallest id."""
    candidates = lex.synsets_of(concept)
    if not candidates:
        return None
    best = min(candidates, key=lambda sid: (-len(lex.synsets[sid].lemmas), sid))
    return lex.synsets[best]


def lemmas_of(s0: str, lex: Lexicon) -> set[str]:
    """Lemma names of the concept's synset plus the concept itself."""
    lemmas = {s0.lower()}
    syn = concept_synset(s0, lex)
    if syn:
        lemmas.update(_lemma_text(l.lower()) for l in syn.lemmas)
    return lemmas


def is_foreign_hyponym(chunk: str, s0: str, lex: Lexicon) -> bool:
    """True when ``chunk`` is a lexicon concept of its own that is NOT below
    the concept synset of ``s0`` (e.g. a distinct species). Unknown compounds
    pass."""
    chunk_synsets = lex.synsets_of(chunk)
    if not chunk_synsets:
        return False
    syn = concept_synset(s0, lex)
    closure = lex.hyponym_closure(syn.id) if syn else set()
    return not (chunk_synsets & closure)


def contains_antonym_pair(a: str, b: str, lex: Lexicon) -> bool:
    """True when some token of ``a`` and some token of ``b`` are registered
    antonyms. Symmetric."""
    tokens_a = {t.lower() for t in a.split()}
    tokens_b = {t.lower() for t in b.split()}
    for ta in tokens_a:
        for tb in tokens_b:
            if ta != tb and frozenset((ta, tb)) in lex.antonym_pairs:
                return True
    return False
