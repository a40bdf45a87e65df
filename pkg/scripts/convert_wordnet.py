#!/usr/bin/env python3
"""Build a lexicon JSON file from WordNet through NLTK.

Needs `nltk` with the wordnet corpus downloaded; neither ships with this
repository, so run this wherever they are available and copy the output:

    python3 scripts/convert_wordnet.py --pos n --out lexicon.json
"""
from __future__ import annotations

import argparse
import json
import sys


def main() -> int:
    parser = argparse.ArgumentParser(
        description="Export WordNet synsets/antonyms to the lexicon JSON format")
    parser.add_argument("--out", required=True)
    parser.add_argument("--pos", default="n",
                        help="WordNet POS tag to export (default: nouns)")
    args = parser.parse_args()

    try:
        from nltk.corpus import wordnet as wn

        wn.ensure_loaded()
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(
            f"cannot load WordNet ({exc}); install nltk and run "
            "nltk.download('wordnet') first\n")
        return 2

    synsets = []
    for synset in wn.all_synsets(pos=args.pos):
        synsets.append({
            "id": synset.name(),
            "lemmas": sorted(synset.lemma_names()),
            "hypernyms": sorted(h.name() for h in synset.hypernyms()),
            "hyponyms": sorted(h.name() for h in synset.hyponyms()),
        })

    antonyms: set[tuple[str, str]] = set()
    for synset in wn.all_synsets():
        for lemma in synset.lemmas():
            for antonym in lemma.antonyms():
                pair = tuple(sorted((lemma.name().lower(),
                                     antonym.name().lower())))
                antonyms.add(pair)

    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump({"synsets": synsets,
                   "antonyms": sorted(list(pair) for pair in antonyms)},
                  fh, ensure_ascii=False)
        fh.write("\n")
    print(f"{len(synsets)} synsets, {len(antonyms)} antonym pairs -> {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
