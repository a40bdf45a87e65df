"""Deterministic rule-based dependency parsing with Clear-style labels.

Coverage is intentionally the declarative-fact register: verb groups with
auxiliaries/negation/particles, copular complements, noun phrases with
determiners/adjectives/compounds/possessives, prepositional phrases,
noun-phrase coordination, exemplification cues and infinitival adverbial
clauses. Every token receives exactly one head; unattached material falls
back to the root with label "dep".
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import wordlists as w
from .tagger import Word

NP_HEAD_TAGS = {"NOUN", "PROPN"}
NP_INNER_TAGS = {"DET", "NUM", "ADJ", "ADV", "NOUN", "PROPN", "PRON", "PART"}


@dataclass
class ParsedWord:
    form: str
    lemma: str
    upos: str
    head: int = 0
    deprel: str = "dep"


@dataclass
class Chunk:
    start: int
    end: int
    head: int
    is_entity: bool = False


@dataclass
class SentenceParse:
    words: list[ParsedWord]
    chunks: list[Chunk] = field(default_factory=list)
    root: int = 0


def _find_verb_chains(words: list[ParsedWord]) -> list[dict]:
    """Maximal verbal groups: AUX*/negation/interleaved adverbs + main verb.
    A lone copular AUX is its own chain."""
    chains = []
    n = len(words)
    index = 0
    while index < n:
        word = words[index]
        if word.upos not in {"AUX", "VERB"}:
            index += 1
            continue
        members = [index]
        scan = index + 1
        while scan < n:
            upos = words[scan].upos
            if upos in {"AUX", "VERB"}:
                members.append(scan)
                scan += 1
            elif words[scan].lemma == "not":
                members.append(scan)
                scan += 1
            elif upos == "ADV" and scan + 1 < n and \
                    words[scan + 1].upos in {"AUX", "VERB"}:
                members.append(scan)
                scan += 1
            else:
                break
        verb_members = [m for m in members if words[m].upos == "VERB"]
        main = verb_members[-1] if verb_members else \
            [m for m in members if words[m].upos == "AUX"][-1]
        passive = False
        if words[main].upos == "VERB":
            lower = words[main].form.lower()
            participle = lower in w.PARTICIPLES or \
                (lower.endswith("ed") and words[main].lemma != lower)
            has_be = any(words[m].upos == "AUX" and words[m].lemma == "be"
                         for m in members if m != main)
            passive = participle and has_be
        chains.append({"members": members, "main": main, "passive": passive})
        index = scan
    return chains


def _attach_chain_internals(words: list[ParsedWord], chain: dict) -> None:
    main = chain["main"]
    be_seen = False
    for member in chain["members"]:
        if member == main:
            continue
        word = words[member]
        if word.upos == "AUX":
            if chain["passive"] and word.lemma == "be" and not be_seen:
                label = "auxpass"
                be_seen = True
            else:
                label = "aux"
            word.head, word.deprel = main + 1, label
        elif word.lemma == "not":
            word.head, word.deprel = main + 1, "neg"
        elif word.upos == "ADV":
            word.head, word.deprel = main + 1, "advmod"


def _scan_noun_phrase(words: list[ParsedWord], start: int) -> tuple[int, int] | None:
    """Maximal NP span beginning at ``start``; returns (end, head) or None."""
    n = len(words)
    if words[start].upos == "PRON" and \
            words[start].lemma not in w.POSSESSIVE_PRONOUNS:
        return start, start
    index = start
    last_noun = None
    while index < n:
        word = words[index]
        if word.upos in NP_HEAD_TAGS:
            last_noun = index
            index += 1
            continue
        if word.upos == "PART" and word.lemma == "'s" and last_noun is not None:
            index += 1
            continue
        if word.upos == "DET" or word.upos == "NUM":
            index += 1
            continue
        if word.upos == "PRON" and word.lemma in w.POSSESSIVE_PRONOUNS:
            index += 1
            continue
        if word.upos == "ADJ":
            index += 1
            continue
        if word.upos == "ADV" and index + 1 < n and \
                words[index + 1].upos in {"ADJ", "ADV"}:
            index += 1
            continue
        break
    if last_noun is None:
        return None
    # trim trailing non-NP material after the last noun ('s of a possessive
    # whose head noun follows later is kept by the loop above)
    end = last_noun
    return end, last_noun


def _attach_np_internals(words: list[ParsedWord], start: int, end: int,
                         head: int) -> None:
    possessor: int | None = None
    clitic: int | None = None
    for index in range(start, end):
        if words[index].upos == "PART" and words[index].lemma == "'s":
            clitic = index
            for back in range(index - 1, start - 1, -1):
                if words[back].upos in NP_HEAD_TAGS:
                    possessor = back
                    break
            break

    for index in range(start, end + 1):
        if index == head:
            continue
        word = words[index]
        if index == possessor:
            word.head, word.deprel = head + 1, "poss"
            continue
        if index == clitic:
            word.head, word.deprel = (possessor if possessor is not None
                                      else head) + 1, "case"
            continue
        # Everything left of the clitic modifies the possessor sub-phrase.
        target = head
        if clitic is not None and possessor is not None and index < clitic:
            target = possessor
        if word.upos == "DET":
            word.head, word.deprel = target + 1, "det"
        elif word.upos == "NUM":
            word.head, word.deprel = target + 1, "nummod"
        elif word.upos == "ADJ":
            word.head, word.deprel = target + 1, "amod"
        elif word.upos == "ADV":
            adj = None
            for scan in range(index + 1, end + 1):
                if words[scan].upos == "ADJ":
                    adj = scan
                    break
            word.head, word.deprel = (adj if adj is not None else target) + 1, \
                "advmod"
        elif word.upos == "PRON" and word.lemma in w.POSSESSIVE_PRONOUNS:
            word.head, word.deprel = target + 1, "poss"
        elif word.upos in NP_HEAD_TAGS:
            word.head, word.deprel = target + 1, "compound"


def _chunk_is_entity(words: list[ParsedWord], start: int, end: int) -> bool:
    nouns = [words[i] for i in range(start, end + 1)
             if words[i].upos in NP_HEAD_TAGS]
    return bool(nouns) and all(word.upos == "PROPN" for word in nouns)


def parse_sentence(tagged: list[Word]) -> SentenceParse:
    words = [ParsedWord(form=t.form, lemma=t.lemma, upos=t.upos) for t in tagged]
    n = len(words)
    if n == 0:
        return SentenceParse(words=[], chunks=[], root=0)

    chains = _find_verb_chains(words)
    mains = [chain["main"] for chain in chains]
    root = mains[0] if mains else None

    for chain in chains:
        _attach_chain_internals(words, chain)

    # Clause linking between verb groups.
    for position, chain in enumerate(chains[1:], start=1):
        main = chain["main"]
        first = chain["members"][0]
        previous_main = chains[position - 1]["main"]
        before = first - 1
        while before >= 0 and words[before].upos == "PUNCT":
            before -= 1
        if before >= 0 and words[before].upos == "PART" \
                and words[before].lemma == "to":
            words[before].head, words[before].deprel = main + 1, "aux"
            words[main].head, words[main].deprel = previous_main + 1, "advcl"
        elif before >= 0 and words[before].upos == "CCONJ":
            words[before].head, words[before].deprel = mains[0] + 1, "cc"
            words[main].head, words[main].deprel = mains[0] + 1, "conj"
        else:
            words[main].head, words[main].deprel = mains[0] + 1, "dep"

    # Noun phrases.
    chunks: list[Chunk] = []
    claimed = [False] * n
    for chain in chains:
        for member in chain["members"]:
            claimed[member] = True
    nps: list[tuple[int, int, int]] = []
    index = 0
    while index < n:
        if claimed[index] or words[index].upos not in NP_INNER_TAGS \
                or (words[index].upos == "PART" and words[index].lemma != "'s"):
            index += 1
            continue
        span = _scan_noun_phrase(words, index)
        if span is None:
            index += 1
            continue
        end, head = span
        _attach_np_internals(words, index, end, head)
        chunks.append(Chunk(start=index, end=end, head=head,
                            is_entity=_chunk_is_entity(words, index, end)))
        nps.append((index, end, head))
        for position in range(index, end + 1):
            claimed[position] = True
        index = end + 1

    # Attachment of NP heads, adjectival complements, prepositions, adverbs.
    np_by_start = {start: (end, head) for start, end, head in nps}
    current_chain = None
    chain_by_first = {chain["members"][0]: chain for chain in chains}
    pending_subject: int | None = None
    conj_anchor: int | None = None
    conj_run_open = False
    last_attached_np: int | None = None
    objects_after_verb: list[int] = []

    def attach(index: int, head: int, deprel: str) -> None:
        words[index].head, words[index].deprel = head + 1, deprel

    index = 0
    while index < n:
        word = words[index]
        if index in chain_by_first:
            chain = chain_by_first[index]
            current_chain = chain
            objects_after_verb = []
            if pending_subject is not None:
                label = "nsubjpass" if chain["passive"] else "nsubj"
                attach(pending_subject, chain["main"], label)
                pending_subject = None
            conj_run_open = False
            conj_anchor = None
            index = max(chain["members"]) + 1
            continue

        if index in np_by_start:
            end, head = np_by_start[index]
            if conj_run_open and conj_anchor is not None:
                attach(head, conj_anchor, "conj")
            elif current_chain is None:
                if pending_subject is not None:
                    attach(pending_subject, pending_subject, "dep")
                pending_subject = head
            else:
                main = current_chain["main"]
                prev = _previous_content(words, index)
                if prev is not None and words[prev].upos == "ADP" \
                        and words[prev].deprel != "prt":
                    attach(head, prev, "pobj")
                elif _next_is_verb_chain(words, end + 1, chain_by_first):
                    pending_subject = head
                else:
                    copula = words[main].upos == "AUX" and \
                        words[main].lemma == "be"
                    if copula:
                        attach(head, main, "attr")
                    elif objects_after_verb:
                        attach(objects_after_verb[-1], main, "dative")
                        attach(head, main, "dobj")
                    else:
                        attach(head, main, "dobj")
                    objects_after_verb.append(head)
            conj_anchor = head
            conj_run_open = False
            last_attached_np = head
            index = end + 1
            continue

        if word.upos == "PUNCT":
            if word.form == "," and conj_anchor is not None and \
                    _run_continues(words, index, np_by_start):
                attach(index, conj_anchor, "punct")
                conj_run_open = True
            elif root is not None:
                attach(index, root if root is not None else 0, "punct")
            index += 1
            continue

        if word.upos == "CCONJ":
            if conj_anchor is not None and _run_continues(words, index,
                                                          np_by_start):
                attach(index, conj_anchor, "cc")
                conj_run_open = True
            elif root is not None:
                attach(index, root, "cc")
            index += 1
            continue

        if word.upos == "ADP":
            attached = False
            prev = _previous_content(words, index)
            main = current_chain["main"] if current_chain else root
            if current_chain is not None and prev == current_chain["main"] \
                    and (words[main].lemma, word.lemma) in w.PHRASAL_VERBS:
                attach(index, main, "prt")
                index += 1
                continue
            is_cue = word.lemma in {"like", "including"} or (
                word.lemma == "as" and prev is not None
                and words[prev].lemma == "such")
            if word.lemma == "as" and prev is not None \
                    and words[prev].lemma == "such":
                attach(prev, index, "amod")
                prev = _previous_content(words, prev)
            if (is_cue or word.lemma == "of") and last_attached_np is not None:
                attach(index, last_attached_np, "prep")
                attached = True
            elif prev is not None and words[prev].upos == "ADJ" \
                    and words[prev].deprel in {"acomp", "oprd"}:
                attach(index, prev, "prep")
                attached = True
            if not attached:
                attach(index, main if main is not None else 0, "prep")
            conj_run_open = False
            conj_anchor = None
            index += 1
            continue

        if word.upos == "ADJ":
            # Prenominal adjectives were claimed by a noun phrase already, so
            # anything reaching this branch is a predicative complement.
            if current_chain is not None:
                label = "acomp" if words[current_chain["main"]].lemma == "be" \
                    or words[current_chain["main"]].upos == "AUX" else "oprd"
                attach(index, current_chain["main"], label)
                conj_anchor = index
                conj_run_open = False
                index += 1
                continue
            attach(index, root if root is not None else 0, "dep")
            index += 1
            continue

        if word.upos == "ADV":
            target = None
            for scan in range(index + 1, min(n, index + 3)):
                if words[scan].upos == "ADJ":
                    target = scan
                    break
            if target is not None:
                attach(index, target, "advmod")
            elif current_chain is not None:
                attach(index, current_chain["main"], "advmod")
            elif root is not None:
                attach(index, root, "advmod")
            index += 1
            continue

        index += 1

    if pending_subject is not None and root is not None:
        attach(pending_subject, root, "nsubj")

    # Root selection and leftovers.
    if root is None:
        root = nps[0][2] if nps else 0
    words[root].head, words[root].deprel = 0, "ROOT"
    for position, word in enumerate(words):
        if position != root and word.head == 0:
            word.head = root + 1
    return SentenceParse(words=words, chunks=chunks, root=root)


def _previous_content(words: list[ParsedWord], index: int) -> int | None:
    for scan in range(index - 1, -1, -1):
        if words[scan].upos != "PUNCT":
            return scan
    return None


def _next_is_verb_chain(words: list[ParsedWord], index: int,
                        chain_by_first: dict) -> bool:
    scan = index
    while scan < len(words) and words[scan].upos == "PUNCT":
        scan += 1
    return scan in chain_by_first


def _run_continues(words: list[ParsedWord], index: int,
                   np_by_start: dict) -> bool:
    """After a comma/coordinator, does another conjunct NP follow?"""
    scan = index + 1
    while scan < len(words) and words[scan].upos in {"PUNCT", "CCONJ"}:
        scan += 1
    return scan in np_by_start
