"""Shared tokenization, stopword and naive morphology helpers."""
from __future__ import annotations

import re
from pathlib import Path

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)

# One list shared by document filtering and context retrieval.
DEFAULT_STOPWORDS = frozenset("""
a about above after again against all am an and any are aren as at be because
been before being below between both but by can cannot could couldn did didn
do does doesn doing don down during each few for from further had hadn has hasn
have haven having he her here hers herself him himself his how i if in into is
isn it its itself just me more most mustn my myself no nor not of off on once
only or other ought our ours ourselves out over own same shan she should
shouldn so some such than that the their theirs them themselves then there
these they this those through to too under until up very was wasn we were
weren what when where which while who whom why will with won would wouldn you
your yours yourself yourselves s t ll ve re d m
""".split())

DETERMINERS = frozenset({
    "a", "an", "the", "this", "that", "these", "those", "some", "any", "no",
    "each", "every", "another", "all", "both",
})

POSSESSIVE_MARKERS = frozenset({"'s", "'", "s'", "’s", "’"})

# Small irregular-noun table for naive pluralization/singularization.
IRREGULAR_PLURALS = {
    "man": "men", "woman": "women", "child": "children", "person": "people",
    "mouse": "mice", "foot": "feet", "tooth": "teeth", "goose": "geese",
    "ox": "oxen", "wolf": "wolves", "leaf": "leaves", "life": "lives",
    "knife": "knives", "calf": "calves", "half": "halves", "loaf": "loaves",
    "shelf": "shelves", "thief": "thieves", "die": "dice", "cactus": "cacti",
    "focus": "foci", "fungus": "fungi", "sheep": "sheep", "deer": "deer",
    "fish": "fish", "species": "species", "lynx": "lynx", "moose": "moose",
    "bison": "bison", "grouse": "grouse",
}
_IRREGULAR_SINGULARS = {v: k for k, v in IRREGULAR_PLURALS.items()}


def tokenize(text: str) -> list[str]:
    """Lowercase Unicode word tokens; punctuation stripped."""
    return _WORD_RE.findall(text.lower())


def content_tokens(text: str, stopwords: frozenset[str] = DEFAULT_STOPWORDS) -> list[str]:
    return [t for t in tokenize(text) if t not in stopwords]


def load_stopwords(path: str | Path) -> frozenset[str]:
    """One stopword per line; blank lines and # comments ignored."""
    words = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.append(line)
    return frozenset(words)


def pluralize(word: str) -> str:
    """Naive pluralization; words that already look plural are left alone."""
    lower = word.lower()
    if lower in _IRREGULAR_SINGULARS:
        return word
    if lower in IRREGULAR_PLURALS:
        plural = IRREGULAR_PLURALS[lower]
        return plural.capitalize() if word[:1].isupper() else plural
    if lower.endswith("s"):
        return word
    if re.search(r"(sh|ch|x|z)$", lower):
        suffix = "es"
    elif re.search(r"[^aeiou]y$", lower):
        return word[:-1] + ("IES" if word.isupper() else "ies")
    else:
        suffix = "s"
    return word + (suffix.upper() if word.isupper() else suffix)


def singularize(word: str) -> str:
    """Naive singularization; inverse of :func:`pluralize` on its outputs."""
    lower = word.lower()
    if lower in _IRREGULAR_SINGULARS:
        return _IRREGULAR_SINGULARS[lower]
    if lower in IRREGULAR_PLURALS:
        return lower
    if lower.endswith("ies") and len(lower) > 3:
        return lower[:-3] + "y"
    if re.search(r"(sh|ch|x|z|s)es$", lower):
        return lower[:-2]
    if lower.endswith("s") and not lower.endswith(("ss", "us", "is")):
        return lower[:-1]
    return lower


def normalize_phrase(text: str) -> str:
    """Normalize free text the way parsed subjects are normalized.

    Leading determiners and possessive markers are dropped, everything is
    lowercased, and the head (last) token is singularized. Idempotent.
    """
    raw = [t for t in text.replace("’", "'").split() if t]
    tokens: list[str] = []
    for tok in raw:
        low = tok.lower().strip(".,;:!?\"()[]")
        if low.endswith("'s"):
            low = low[:-2]
        elif low.endswith("'"):
            low = low[:-1]
        if not low or low in POSSESSIVE_MARKERS:
            continue
        if not tokens and low in DETERMINERS:
            continue
        tokens.append(low)
    if tokens:
        tokens[-1] = singularize(tokens[-1])
    return " ".join(tokens)


def smart_join(forms: list[str]) -> str:
    """Join token forms with spaces, gluing punctuation and clitics."""
    out: list[str] = []
    for form in forms:
        if out and (form in {".", ",", ";", ":", "!", "?", ")", "]", "%"}
                    or form.startswith("'") or form.startswith("’")
                    or form == "n't"):
            out[-1] = out[-1] + form
        elif out and out[-1] in {"(", "["}:
            out[-1] = out[-1] + form
        else:
            out.append(form)
    return " ".join(out)
