#!/usr/bin/env python3
"""Regenerate the checked-in demo corpus under demo/.

The demo is a 3-document offline corpus about elephants (plus one off-topic
page the relevance filter must drop), with hand-built dependency parses, a
small lexicon, embeddings whose plural forms share the singular's vector, a
synset->article pairing file and a ready-to-run pipeline config.

Run from the repository root: python3 scripts/build_demo_corpus.py
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from facetkb.discovery import RawDocument, reference_similarity
from facetkb.parsing import (CorefChain, Mention, NounChunk, ParsedDocument,
                             ParsedSentence, ParsedToken, write_corpus)

ROOT = Path(__file__).resolve().parent.parent
DEMO = ROOT / "demo"


def sent(rows, chunks=(), paragraph=0):
    tokens = tuple(ParsedToken(i=i, form=f, lemma=l, upos=u, head=h, deprel=d)
                   for i, (f, l, u, h, d) in enumerate(rows, start=1))
    return ParsedSentence(tokens=tokens,
                          noun_chunks=tuple(NounChunk(*c) for c in chunks),
                          paragraph=paragraph)


E1_SENTENCES = [
    ("Elephants are the largest land animals.", sent([
        ("Elephants", "elephant", "NOUN", 2, "nsubj"),
        ("are", "be", "AUX", 0, "ROOT"),
        ("the", "the", "DET", 6, "det"),
        ("largest", "large", "ADJ", 6, "amod"),
        ("land", "land", "NOUN", 6, "compound"),
        ("animals", "animal", "NOUN", 2, "attr"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (3, 6)])),
    ("They live in savannas and forests.", sent([
        ("They", "they", "PRON", 2, "nsubj"),
        ("live", "live", "VERB", 0, "ROOT"),
        ("in", "in", "ADP", 2, "prep"),
        ("savannas", "savanna", "NOUN", 3, "pobj"),
        ("and", "and", "CCONJ", 4, "cc"),
        ("forests", "forest", "NOUN", 4, "conj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (4, 4), (6, 6)])),
    ("Elephants have a very long trunk.", sent([
        ("Elephants", "elephant", "NOUN", 2, "nsubj"),
        ("have", "have", "VERB", 0, "ROOT"),
        ("a", "a", "DET", 6, "det"),
        ("very", "very", "ADV", 5, "advmod"),
        ("long", "long", "ADJ", 6, "amod"),
        ("trunk", "trunk", "NOUN", 2, "dobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (3, 6)])),
    ("The elephant's trunk is muscular.", sent([
        ("The", "the", "DET", 4, "det"),
        ("elephant", "elephant", "NOUN", 4, "poss"),
        ("'s", "'s", "PART", 2, "case"),
        ("trunk", "trunk", "NOUN", 5, "nsubj"),
        ("is", "be", "AUX", 0, "ROOT"),
        ("muscular", "muscular", "ADJ", 5, "acomp"),
        (".", ".", "PUNCT", 5, "punct"),
    ], chunks=[(1, 4)])),
    ("Elephants eat grass, fruit, and bark.", sent([
        ("Elephants", "elephant", "NOUN", 2, "nsubj"),
        ("eat", "eat", "VERB", 0, "ROOT"),
        ("grass", "grass", "NOUN", 2, "dobj"),
        (",", ",", "PUNCT", 3, "punct"),
        ("fruit", "fruit", "NOUN", 3, "conj"),
        (",", ",", "PUNCT", 3, "punct"),
        ("and", "and", "CCONJ", 3, "cc"),
        ("bark", "bark", "NOUN", 3, "conj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (3, 3), (5, 5), (8, 8)], paragraph=1)),
    ("Adult elephants drink water with their trunks.", sent([
        ("Adult", "adult", "ADJ", 2, "amod"),
        ("elephants", "elephant", "NOUN", 3, "nsubj"),
        ("drink", "drink", "VERB", 0, "ROOT"),
        ("water", "water", "NOUN", 3, "dobj"),
        ("with", "with", "ADP", 3, "prep"),
        ("their", "their", "PRON", 7, "poss"),
        ("trunks", "trunk", "NOUN", 5, "pobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ], chunks=[(1, 2), (4, 4), (6, 7)], paragraph=1)),
    ("Elephants use their trunks to suck up water.", sent([
        ("Elephants", "elephant", "NOUN", 2, "nsubj"),
        ("use", "use", "VERB", 0, "ROOT"),
        ("their", "their", "PRON", 4, "poss"),
        ("trunks", "trunk", "NOUN", 2, "dobj"),
        ("to", "to", "PART", 6, "aux"),
        ("suck", "suck", "VERB", 2, "advcl"),
        ("up", "up", "ADP", 6, "prt"),
        ("water", "water", "NOUN", 6, "dobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (3, 4), (8, 8)], paragraph=1)),
]

E2_SENTENCES = [
    ("African elephants live in savannas.", sent([
        ("African", "african", "ADJ", 2, "amod"),
        ("elephants", "elephant", "NOUN", 3, "nsubj"),
        ("live", "live", "VERB", 0, "ROOT"),
        ("in", "in", "ADP", 3, "prep"),
        ("savannas", "savanna", "NOUN", 4, "pobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ], chunks=[(1, 2), (5, 5)])),
    ("The African elephant has large ears.", sent([
        ("The", "the", "DET", 3, "det"),
        ("African", "african", "ADJ", 3, "amod"),
        ("elephant", "elephant", "NOUN", 4, "nsubj"),
        ("has", "have", "VERB", 0, "ROOT"),
        ("large", "large", "ADJ", 6, "amod"),
        ("ears", "ear", "NOUN", 4, "dobj"),
        (".", ".", "PUNCT", 4, "punct"),
    ], chunks=[(1, 3), (5, 6)])),
    ("Circus elephants catch balls.", sent([
        ("Circus", "circus", "NOUN", 2, "compound"),
        ("elephants", "elephant", "NOUN", 3, "nsubj"),
        ("catch", "catch", "VERB", 0, "ROOT"),
        ("balls", "ball", "NOUN", 3, "dobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ], chunks=[(1, 2), (4, 4)])),
    ("Elephants have thick skin.", sent([
        ("Elephants", "elephant", "NOUN", 2, "nsubj"),
        ("have", "have", "VERB", 0, "ROOT"),
        ("thick", "thick", "ADJ", 4, "amod"),
        ("skin", "skin", "NOUN", 2, "dobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (3, 4)])),
    ("An elephant's trunk contains many muscles.", sent([
        ("An", "a", "DET", 4, "det"),
        ("elephant", "elephant", "NOUN", 4, "poss"),
        ("'s", "'s", "PART", 2, "case"),
        ("trunk", "trunk", "NOUN", 5, "nsubj"),
        ("contains", "contain", "VERB", 0, "ROOT"),
        ("many", "many", "ADJ", 7, "amod"),
        ("muscles", "muscle", "NOUN", 5, "dobj"),
        (".", ".", "PUNCT", 5, "punct"),
    ], chunks=[(1, 4), (6, 7)], paragraph=1)),
    ("Adult elephants eat grass.", sent([
        ("Adult", "adult", "ADJ", 2, "amod"),
        ("elephants", "elephant", "NOUN", 3, "nsubj"),
        ("eat", "eat", "VERB", 0, "ROOT"),
        ("grass", "grass", "NOUN", 3, "dobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ], chunks=[(1, 2), (4, 4)], paragraph=1)),
    ("Circus elephants perform amazing tricks.", sent([
        ("Circus", "circus", "NOUN", 2, "compound"),
        ("elephants", "elephant", "NOUN", 3, "nsubj"),
        ("perform", "perform", "VERB", 0, "ROOT"),
        ("amazing", "amazing", "ADJ", 5, "amod"),
        ("tricks", "trick", "NOUN", 3, "dobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ], chunks=[(1, 2), (4, 5)], paragraph=1)),
]

E3_SENTENCES = [
    ("Elephants are very smart.", sent([
        ("Elephants", "elephant", "NOUN", 2, "nsubj"),
        ("are", "be", "AUX", 0, "ROOT"),
        ("very", "very", "ADV", 4, "advmod"),
        ("smart", "smart", "ADJ", 2, "acomp"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1)])),
    ("They have long trunks.", sent([
        ("They", "they", "PRON", 2, "nsubj"),
        ("have", "have", "VERB", 0, "ROOT"),
        ("long", "long", "ADJ", 4, "amod"),
        ("trunks", "trunk", "NOUN", 2, "dobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (3, 4)])),
    ("Circus elephants are playful.", sent([
        ("Circus", "circus", "NOUN", 2, "compound"),
        ("elephants", "elephant", "NOUN", 3, "nsubj"),
        ("are", "be", "AUX", 0, "ROOT"),
        ("playful", "playful", "ADJ", 3, "acomp"),
        (".", ".", "PUNCT", 3, "punct"),
    ], chunks=[(1, 2)])),
    ("African elephants have large ears.", sent([
        ("African", "african", "ADJ", 2, "amod"),
        ("elephants", "elephant", "NOUN", 3, "nsubj"),
        ("have", "have", "VERB", 0, "ROOT"),
        ("large", "large", "ADJ", 5, "amod"),
        ("ears", "ear", "NOUN", 3, "dobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ], chunks=[(1, 2), (4, 5)])),
    ("Elephants eat grass and fruit.", sent([
        ("Elephants", "elephant", "NOUN", 2, "nsubj"),
        ("eat", "eat", "VERB", 0, "ROOT"),
        ("grass", "grass", "NOUN", 2, "dobj"),
        ("and", "and", "CCONJ", 3, "cc"),
        ("fruit", "fruit", "NOUN", 3, "conj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (3, 3), (5, 5)], paragraph=1)),
    ("Adult elephants protect the herd.", sent([
        ("Adult", "adult", "ADJ", 2, "amod"),
        ("elephants", "elephant", "NOUN", 3, "nsubj"),
        ("protect", "protect", "VERB", 0, "ROOT"),
        ("the", "the", "DET", 5, "det"),
        ("herd", "herd", "NOUN", 3, "dobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ], chunks=[(1, 2), (4, 5)], paragraph=1)),
    ("An elephant's trunk is powerful.", sent([
        ("An", "a", "DET", 4, "det"),
        ("elephant", "elephant", "NOUN", 4, "poss"),
        ("'s", "'s", "PART", 2, "case"),
        ("trunk", "trunk", "NOUN", 5, "nsubj"),
        ("is", "be", "AUX", 0, "ROOT"),
        ("powerful", "powerful", "ADJ", 5, "acomp"),
        (".", ".", "PUNCT", 5, "punct"),
    ], chunks=[(1, 4)], paragraph=1)),
]

DOCS = {
    "e1": {
        "title": "Elephant - Wikipedia",
        "url": "https://en.wikipedia.org/wiki/Elephant",
        "rank": 1,
        "sentences": E1_SENTENCES,
        "coref": [CorefChain(rep=Mention(0, (1, 1)),
                             mentions=(Mention(1, (1, 1)),))],
    },
    "e2": {
        "title": "Interesting elephant facts",
        "url": "https://funfacts.example.org/elephants",
        "rank": 2,
        "sentences": E2_SENTENCES,
        "coref": [],
    },
    "e3": {
        "title": "Elephant behavior",
        "url": "https://wildlife.example.org/elephant-behavior",
        "rank": 3,
        "sentences": E3_SENTENCES,
        "coref": [CorefChain(rep=Mention(0, (1, 1)),
                             mentions=(Mention(1, (1, 1)),))],
    },
}

JUNK = {
    "title": "A practical quantum computing guide",
    "url": "https://tech.example.org/quantum",
    "rank": 4,
    "body": ("Quantum computers manipulate qubits with entanglement.\n\n"
             "Superconducting circuits require cryogenic cooling. Error "
             "correction consumes physical qubits. Compilers translate "
             "gates into pulse schedules."),
}

# One axis per content word keeps unrelated phrases apart (cosine <= 0.5 for
# single shared tokens); plural forms reuse the singular's vector so spelling
# variants of one assertion land in one cluster.
AXIS_WORDS = [
    "elephant", "trunk", "grass", "fruit", "bark", "water", "savanna",
    "forest", "smart", "long", "large", "thick", "skin", "ear", "muscle",
    "ball", "trick", "herd", "circus", "african", "adult", "animal", "land",
    "be", "have", "eat", "live", "drink", "use", "catch", "perform",
    "protect", "contain", "suck", "muscular", "powerful", "playful",
    "amazing", "largest",
]
PLURALS = {
    "elephants": "elephant", "trunks": "trunk", "savannas": "savanna",
    "forests": "forest", "ears": "ear", "muscles": "muscle", "balls": "ball",
    "tricks": "trick", "animals": "animal", "herds": "herd",
}
EMBEDDING_WORDS = {
    word: [1.0 if axis == index else 0.0 for axis in range(len(AXIS_WORDS))]
    for index, word in enumerate(AXIS_WORDS)
}


def body_of(sentences):
    paragraphs: dict[int, list[str]] = {}
    for text, parsed in sentences:
        paragraphs.setdefault(parsed.paragraph, []).append(text)
    return "\n\n".join(" ".join(block) for _, block in sorted(paragraphs.items()))


def main() -> int:
    corpus = DEMO / "corpus"
    corpus.mkdir(parents=True, exist_ok=True)

    bodies = {}
    for doc_id, spec in DOCS.items():
        body = body_of(spec["sentences"])
        bodies[doc_id] = body
        (corpus / f"{doc_id}.txt").write_text(body + "\n", encoding="utf-8")
        (corpus / f"{doc_id}.meta.json").write_text(json.dumps({
            "title": spec["title"], "url": spec["url"], "rank": spec["rank"],
        }, indent=2) + "\n", encoding="utf-8")
    (corpus / "junk.txt").write_text(JUNK["body"] + "\n", encoding="utf-8")
    (corpus / "junk.meta.json").write_text(json.dumps({
        "title": JUNK["title"], "url": JUNK["url"], "rank": JUNK["rank"],
    }, indent=2) + "\n", encoding="utf-8")

    documents = [
        ParsedDocument(id=doc_id,
                       sentences=tuple(parsed for _, parsed in spec["sentences"]),
                       coref=tuple(spec["coref"]))
        for doc_id, spec in DOCS.items()
    ]
    write_corpus(documents, DEMO / "parsed.jsonl")

    lexicon = {
        "synsets": [
            {"id": "animal.n.01", "lemmas": ["animal", "animate_being", "beast"],
             "hypernyms": [], "hyponyms": []},
            {"id": "elephant.n.01", "lemmas": ["elephant"],
             "hypernyms": ["animal.n.01"], "hyponyms": []},
        ],
        "antonyms": [["male", "female"], ["old", "young"]],
    }
    (DEMO / "lexicon.json").write_text(json.dumps(lexicon, indent=2) + "\n",
                                       encoding="utf-8")

    entries = dict(EMBEDDING_WORDS)
    for plural, singular in PLURALS.items():
        entries[plural] = EMBEDDING_WORDS[singular]
    lines = [f"{len(entries)} {len(AXIS_WORDS)}"]
    lines += [f"{token} " + " ".join(str(int(v)) for v in vector)
              for token, vector in entries.items()]
    (DEMO / "embeddings.txt").write_text("\n".join(lines) + "\n",
                                         encoding="utf-8")

    (DEMO / "templates.json").write_text(json.dumps([
        {"synset": "animal.n.01", "pattern": "{s} animal facts"},
    ], indent=2) + "\n", encoding="utf-8")
    (DEMO / "pairings.json").write_text(json.dumps(
        {"elephant.n.01": "e1"}, indent=2) + "\n", encoding="utf-8")

    config = {
        "subjects": ["elephant"],
        "lexicon": "demo/lexicon.json",
        "embeddings": "demo/embeddings.txt",
        "templates": "demo/templates.json",
        "corpus_dir": "demo/corpus",
        "parsed_corpus": "demo/parsed.jsonl",
        "pairings": "demo/pairings.json",
        "out_dir": "demo_out",
        "rho": 0.45,
        "min_support": 3,
        "cluster_k": 100,
        "workers": 1,
        "figures": True,
    }
    (DEMO / "config.json").write_text(json.dumps(config, indent=2) + "\n",
                                      encoding="utf-8")

    reference = RawDocument(id="e1", url=DOCS["e1"]["url"],
                            title=DOCS["e1"]["title"], body=bodies["e1"])
    for doc_id in ("e1", "e2", "e3"):
        other = RawDocument(id=doc_id, url="", title="", body=bodies[doc_id])
        similarity = reference_similarity(other, reference)
        print(f"{doc_id}: similarity to reference = {similarity:.4f} "
              f"(retained: {1 - similarity <= 0.45})")
    junk_doc = RawDocument(id="junk", url="", title="", body=JUNK["body"])
    similarity = reference_similarity(junk_doc, reference)
    print(f"junk: similarity to reference = {similarity:.4f} "
          f"(retained: {1 - similarity <= 0.45})")
    print(f"demo files written under {DEMO}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
