"""Hand-checked dependency parses for the six benchmark sentences.

The extraction rules are defined over trees, so these fixtures pin the trees
themselves instead of depending on any parser's output.
"""
from __future__ import annotations

from facetkb.parsing import NounChunk, ParsedSentence, ParsedToken


def sentence(rows, chunks=(), paragraph=0) -> ParsedSentence:
    tokens = tuple(
        ParsedToken(i=index, form=form, lemma=lemma, upos=upos, head=head,
                    deprel=deprel)
        for index, (form, lemma, upos, head, deprel) in enumerate(rows, start=1)
    )
    noun_chunks = tuple(NounChunk(*chunk) for chunk in chunks)
    return ParsedSentence(tokens=tokens, noun_chunks=noun_chunks,
                          paragraph=paragraph)


GOLD_SENTENCES = {
    1: sentence([
        ("They", "they", "PRON", 2, "nsubj"),
        ("eat", "eat", "VERB", 0, "ROOT"),
        ("ptarmigans", "ptarmigan", "NOUN", 2, "dobj"),
        (",", ",", "PUNCT", 3, "punct"),
        ("voles", "vole", "NOUN", 3, "conj"),
        (",", ",", "PUNCT", 3, "punct"),
        ("and", "and", "CCONJ", 3, "cc"),
        ("grouse", "grouse", "NOUN", 3, "conj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (3, 3), (5, 5), (8, 8)]),
    2: sentence([
        ("Lynx", "lynx", "NOUN", 2, "nsubj"),
        ("are", "be", "AUX", 0, "ROOT"),
        ("active", "active", "ADJ", 2, "acomp"),
        ("during", "during", "ADP", 3, "prep"),
        ("evening", "evening", "NOUN", 4, "pobj"),
        ("and", "and", "CCONJ", 5, "cc"),
        ("early", "early", "ADJ", 8, "amod"),
        ("morning", "morning", "NOUN", 5, "conj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (5, 5), (7, 8)]),
    3: sentence([
        ("Lions", "lion", "NOUN", 2, "nsubj"),
        ("live", "live", "VERB", 0, "ROOT"),
        ("for", "for", "ADP", 2, "prep"),
        ("20", "20", "NUM", 5, "nummod"),
        ("years", "year", "NOUN", 3, "pobj"),
        ("in", "in", "ADP", 2, "prep"),
        ("captivity", "captivity", "NOUN", 6, "pobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (4, 5), (7, 7)]),
    4: sentence([
        ("Lions", "lion", "NOUN", 2, "nsubj"),
        ("hunt", "hunt", "VERB", 0, "ROOT"),
        ("many", "many", "ADJ", 4, "amod"),
        ("animals", "animal", "NOUN", 2, "dobj"),
        (",", ",", "PUNCT", 4, "punct"),
        ("such", "such", "ADJ", 7, "amod"),
        ("as", "as", "ADP", 4, "prep"),
        ("gnus", "gnu", "NOUN", 7, "pobj"),
        ("and", "and", "CCONJ", 8, "cc"),
        ("antelopes", "antelope", "NOUN", 8, "conj"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (3, 4), (8, 8), (10, 10)]),
    5: sentence([
        ("Dogs", "dog", "NOUN", 2, "nsubj"),
        ("are", "be", "AUX", 0, "ROOT"),
        ("extremely", "extremely", "ADV", 4, "advmod"),
        ("smart", "smart", "ADJ", 2, "acomp"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1)]),
    6: sentence([
        ("Elephants", "elephant", "NOUN", 2, "nsubj"),
        ("are", "be", "AUX", 0, "ROOT"),
        ("extremely", "extremely", "ADV", 4, "advmod"),
        ("good", "good", "ADJ", 5, "amod"),
        ("swimmers", "swimmer", "NOUN", 2, "attr"),
        (".", ".", "PUNCT", 2, "punct"),
    ], chunks=[(1, 1), (3, 5)]),
}

# (subject, predicate, object) surface triples and facet-value multisets the
# extraction chain must produce for each benchmark sentence.
GOLD_EXPECTED = {
    1: {
        ("They", "eat", "ptarmigans"): [],
        ("They", "eat", "voles"): [],
        ("They", "eat", "grouse"): [],
    },
    2: {("Lynx", "are", "active"): ["during evening", "during early morning"]},
    3: {("Lions", "live", "for 20 years"): ["in captivity"]},
    4: {
        ("Lions", "hunt", "gnus"): [],
        ("Lions", "hunt", "antelopes"): [],
    },
    5: {("Dogs", "are", "smart"): ["extremely"]},
    6: {("Elephants", "are", "good swimmers"): ["extremely"]},
}

# Facet keys the heuristic must assign on the benchmark facets.
GOLD_FACET_KEYS = {
    2: {"during evening": "temporal", "during early morning": "temporal"},
    3: {"in captivity": "location"},
    5: {"extremely": "degree"},
    6: {"extremely": "degree"},
}


def run_chain(parsed: ParsedSentence):
    """Surface triples + facet values after the full extraction chain."""
    from facetkb.extraction import extract_sentence

    out = {}
    for assertion in extract_sentence(parsed):
        triple = (parsed.span_text(assertion.subject),
                  parsed.span_text(assertion.predicate),
                  parsed.span_text(assertion.object))
        values = [parsed.span_text(f.tokens).lower() for f in assertion.facets]
        out[triple] = sorted(values)
    return out
