"""Lexicon-and-suffix part-of-speech tagging with lemmatization.

Tags follow the universal POS inventory the downstream pipeline expects
(NOUN, PROPN, VERB, AUX, ADJ, ADV, ADP, DET, PRON, NUM, CCONJ, PART, PUNCT).
Unknown open-class words default to nouns; inflection is undone with small
irregular tables plus suffix rules.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from . import wordlists as w

PUNCTUATION = set(".,;:!?()[]{}\"'`-–—…/")
POSSESSIVE_FORMS = {"'s", "'"}


@dataclass
class Word:
    form: str
    lemma: str
    upos: str


def singular_noun(form: str) -> str:
    lower = form.lower()
    if lower in w.IRREGULAR_NOUNS:
        return w.IRREGULAR_NOUNS[lower]
    if lower.endswith("ies") and len(lower) > 3:
        return lower[:-3] + "y"
    if re.search(r"(sh|ch|x|z|s)es$", lower):
        return lower[:-2]
    if lower.endswith("s") and not lower.endswith(("ss", "us", "is")):
        return lower[:-1]
    return lower


def _undouble(stem: str) -> str:
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in "aeiouls":
        return stem[:-1]
    return stem


def verb_lemma(form: str) -> str:
    lower = form.lower()
    if lower in w.AUX_LEMMAS:
        return w.AUX_LEMMAS[lower]
    if lower in w.IRREGULAR_VERBS:
        return w.IRREGULAR_VERBS[lower]
    if lower in w.VERBS:
        return lower
    for suffix in ("ing", "ed"):
        if lower.endswith(suffix) and len(lower) > len(suffix) + 2:
            stem = lower[: -len(suffix)]
            for candidate in (stem, _undouble(stem), stem + "e"):
                if candidate in w.VERBS:
                    return candidate
            return _undouble(stem)
    if lower.endswith("ies") and len(lower) > 3:
        return lower[:-3] + "y"
    if re.search(r"(sh|ch|x|z|s)es$", lower):
        return lower[:-2]
    if lower.endswith("s") and not lower.endswith("ss"):
        return lower[:-1]
    return lower


def adjective_lemma(form: str) -> str:
    lower = form.lower()
    if lower in w.ADJECTIVES:
        return lower
    for suffix in ("est", "er"):
        if lower.endswith(suffix) and len(lower) > len(suffix) + 2:
            stem = lower[: -len(suffix)]
            for candidate in (stem, _undouble(stem), stem + "e",
                              stem[:-1] + "y" if stem.endswith("i") else stem):
                if candidate in w.ADJECTIVES:
                    return candidate
    return lower


def _is_verbish(lower: str) -> bool:
    if lower in w.VERBS or lower in w.IRREGULAR_VERBS:
        return True
    for suffix in ("ing", "ed", "es", "s"):
        if lower.endswith(suffix) and len(lower) > len(suffix) + 1:
            stem = lower[: -len(suffix)]
            if stem in w.VERBS or _undouble(stem) in w.VERBS \
                    or stem + "e" in w.VERBS:
                return True
    return False


def _looks_participle(lower: str) -> bool:
    return lower in w.PARTICIPLES or (lower.endswith("ed") and len(lower) > 3)


def tag(tokens: list[str]) -> list[Word]:
    n = len(tokens)
    words: list[Word] = []
    saw_main_verb = False
    for index, token in enumerate(tokens):
        lower = token.lower()
        nxt = tokens[index + 1].lower() if index + 1 < n else ""
        prev = words[index - 1] if index else None

        if token in PUNCTUATION or all(ch in PUNCTUATION for ch in token):
            words.append(Word(token, token, "PUNCT"))
            continue
        if lower in POSSESSIVE_FORMS:
            words.append(Word(token, "'s", "PART"))
            continue
        if re.fullmatch(r"\d+(?:[.,]\d+)*", token):
            words.append(Word(token, token, "NUM"))
            continue
        if lower in w.NUMBER_WORDS and prev is not None and prev.upos != "DET":
            words.append(Word(token, lower, "NUM"))
            continue
        if lower == "not" or token == "n't":
            words.append(Word(token, "not", "PART"))
            continue
        if lower == "to":
            upos = "PART" if _is_verbish(nxt) or nxt == "be" else "ADP"
            words.append(Word(token, "to", upos))
            continue
        if lower == "such":
            # "such as" keeps such adjectival; bare "such" is a determiner
            words.append(Word(token, "such", "ADJ" if nxt == "as" else "DET"))
            continue
        if lower in w.BE_FORMS:
            words.append(Word(token, "be", "AUX"))
            saw_main_verb = True
            continue
        if lower in w.MODALS and not (token[0].isupper() and _is_capitalized(tokens, index + 1)):
            words.append(Word(token, lower, "AUX"))
            continue
        if lower in w.HAVE_FORMS or lower in w.DO_FORMS:
            auxish = False
            for ahead in tokens[index + 1: index + 4]:
                ahead_lower = ahead.lower()
                if ahead_lower in {"not"} or ahead_lower.endswith("ly"):
                    continue
                auxish = ahead_lower in w.BE_FORMS or _looks_participle(ahead_lower)
                break
            if auxish:
                words.append(Word(token, w.AUX_LEMMAS[lower], "AUX"))
            else:
                words.append(Word(token, verb_lemma(lower), "VERB"))
                saw_main_verb = True
            continue
        if lower in w.DETERMINERS:
            words.append(Word(token, lower, "DET"))
            continue
        if lower in w.COORDINATORS:
            words.append(Word(token, lower, "CCONJ"))
            continue
        if lower in w.PRONOUNS:
            words.append(Word(token, lower, "PRON"))
            continue
        if token[0].isupper() and (index > 0 or _is_capitalized(tokens, index + 1)) \
                and lower not in w.ADJECTIVES and not _is_verbish(lower) \
                and lower not in w.PREPOSITIONS and lower not in w.ADVERBS \
                and lower not in w.NOUNS and singular_noun(lower) not in w.NOUNS:
            words.append(Word(token, token, "PROPN"))
            continue
        if lower in w.PREPOSITIONS:
            words.append(Word(token, lower, "ADP"))
            continue
        if lower in w.ADJECTIVES or adjective_lemma(lower) != lower \
                and adjective_lemma(lower) in w.ADJECTIVES:
            words.append(Word(token, adjective_lemma(lower), "ADJ"))
            continue
        if lower in w.ADVERBS or (lower.endswith("ly") and len(lower) > 3):
            words.append(Word(token, lower, "ADV"))
            continue
        if _is_verbish(lower):
            nounish_context = prev is not None and prev.upos in {
                "DET", "ADJ", "NUM"} or (prev is not None and prev.upos == "PART"
                                         and prev.lemma == "'s")
            base = lower in w.VERBS or lower in w.IRREGULAR_VERBS
            plain_noun = singular_noun(lower) in w.NOUNS
            if nounish_context or (plain_noun and saw_main_verb and not base):
                words.append(Word(token, singular_noun(lower), "NOUN"))
            else:
                words.append(Word(token, verb_lemma(lower), "VERB"))
                saw_main_verb = True
            continue
        words.append(Word(token, singular_noun(lower), "NOUN"))
    return words


def _is_capitalized(tokens: list[str], index: int) -> bool:
    return index < len(tokens) and tokens[index][:1].isupper()
