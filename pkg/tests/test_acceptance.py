"""Acceptance suite: one test per exit criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s`. The whole suite is
fixture- and property-based and needs no neural runtime and no external
services.
"""
from __future__ import annotations

import json
import random
import time

from facetkb.consolidation import cluster_triples
from facetkb.discovery import FilterConfig, filter_documents
from facetkb.expansion import (ExpansionConfig, collect_aspects,
                               collect_subgroups, route_assertions)
from facetkb.extraction import ChunkOccurrence, Extraction, ObjectToken
from facetkb.facets import FacetQuery, type_facet_heuristic, type_facets_external
from facetkb.model import (Facet, FacetedAssertion, FacetKey, KnowledgeBase,
                           SubjectEntry, SubjectKind, load_kb, save_kb)
from facetkb.pipeline import run_pipeline
from facetkb.query import ContextRequest, TRIPLES_ONLY, WITH_FACETS, build_context
from facetkb.scorer import (EmbeddingPairScorer, ExternalPairScorer, LineScorer,
                            ScorerProtocolError)

from .conftest import scorer_command
from .gold import GOLD_EXPECTED, GOLD_FACET_KEYS, GOLD_SENTENCES, run_chain
from .test_consolidation import oracle_partition, partition_of, random_instance
from .test_discovery import NO_STOP, doc, similarity_fixture, words
from .test_facets import SHOWCASE
from .test_pipeline import demo_config
from .test_query import oracle_ranking


def _pass(message: str) -> None:
    print(f"PASS: {message}")


def test_c1_benchmark_extraction_reproduced():
    started = time.perf_counter()
    for number, parsed in GOLD_SENTENCES.items():
        got = run_chain(parsed)
        expected = {triple: sorted(values)
                    for triple, values in GOLD_EXPECTED[number].items()}
        assert got == expected, f"sentence {number}: {got}"
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    _pass(f"benchmark extraction: 6/6 sentences reproduced in {elapsed:.3f}s")


def test_c2_facet_typing_fixtures():
    expected = {value: key for keys in GOLD_FACET_KEYS.values()
                for value, key in keys.items()}
    contexts = {
        "during evening": ("lynx", "be", "active"),
        "during early morning": ("lynx", "be", "active"),
        "in captivity": ("lion", "live", "for 20 years"),
        "extremely": ("dog", "be", "smart"),
    }
    for value, key in expected.items():
        s, p, o = contexts[value]
        got = type_facet_heuristic(FacetQuery(s, p, o, value))
        assert got.value == key, f"{value}: {got.value} != {key}"
    hits = sum(type_facet_heuristic(query) is key for query, key in SHOWCASE)
    assert hits >= 4
    _pass(f"facet typing: benchmark facets exact, showcase set {hits}/6")


def test_c3_clustering_matches_full_matrix_oracle():
    started = time.perf_counter()
    rng = random.Random(20250809)
    matches = 0
    instances = 200
    for _ in range(instances):
        table, pool, threshold = random_instance(rng, max_n=50)
        scorer = EmbeddingPairScorer(table)
        clusters = cluster_triples(pool, table, scorer, k=len(pool),
                                   threshold=threshold)
        if partition_of(clusters, pool) == oracle_partition(pool, table,
                                                            threshold):
            matches += 1
    elapsed = time.perf_counter() - started
    assert matches == instances
    assert elapsed < 30.0
    _pass(f"clustering oracle: {matches}/{instances} exact partition matches "
          f"in {elapsed:.1f}s")


def test_c4_representative_and_frequency_conservation():
    rng = random.Random(31337)
    for _ in range(50):
        table, pool, threshold = random_instance(rng, max_n=40)
        clusters = cluster_triples(pool, table, EmbeddingPairScorer(table),
                                   k=rng.randint(1, len(pool)),
                                   threshold=threshold)
        assert sum(c.frequency for c in clusters) == \
            sum(a.frequency for a in pool)
        for cluster in clusters:
            top = max(member.frequency for member in cluster.members)
            assert cluster.representative.frequency == top
    _pass("representatives are max-frequency members; total frequency conserved")


def test_c5_document_filter():
    cfg = FilterConfig(rho=0.45, stopwords=NO_STOP)
    ref = doc("ref", words("w", 30))
    identical = doc("same", words("w", 30))
    disjoint = doc("junk", words("z", 30))
    result = filter_documents([identical, disjoint], ref, cfg)
    assert [d.id for d in result.retained] == ["same"]

    boundary, boundary_ref = similarity_fixture(11, 9, 9)
    boundary_result = filter_documents([boundary], boundary_ref, cfg)
    assert boundary_result.retained == [boundary]
    assert boundary_result.report[0].similarity == 0.55

    rng = random.Random(5)
    docs = []
    for i in range(30):
        shared = rng.randint(0, 40)
        docs.append(doc(f"d{i}", words("w", shared) + " "
                        + words(f"x{i}_", 40 - shared)))
    sweep_ref = doc("ref", words("w", 40))
    previous: set[str] = set()
    for rho in [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]:
        retained = {d.id for d in filter_documents(
            docs, sweep_ref, FilterConfig(rho=rho, stopwords=NO_STOP)).retained}
        assert previous <= retained
        previous = retained
    _pass("document filter: identity kept, disjoint dropped, 0.55 boundary "
          "kept, retention monotone over the rho sweep")


def test_c6_subgroup_and_aspect_rules(lexicon, embeddings):
    cfg = ExpansionConfig(min_support=3, subgroup_distance=0.15)

    variants = collect_subgroups(
        [ChunkOccurrence("canadian lynx", 4), ChunkOccurrence("canada lynx", 2)],
        "lynx", lexicon, embeddings, cfg)
    assert len(variants) == 1 and set(variants[0].members) == \
        {"canadian lynx", "canada lynx"}

    absorbed = collect_subgroups(
        [ChunkOccurrence("canadian lynx", 3),
         ChunkOccurrence("old male canadian lynx", 2)],
        "lynx", lexicon, embeddings, cfg)
    assert len(absorbed) == 1 and absorbed[0].members == ("canadian lynx",)

    assert collect_subgroups(
        [ChunkOccurrence("sea lion", 9), ChunkOccurrence("ant lion", 9)],
        "lion", lexicon, embeddings, cfg) == []

    assert collect_subgroups(
        [ChunkOccurrence("will smith", 9, is_named_entity=True)],
        "smith", lexicon, embeddings, cfg) == []

    tuft = collect_aspects([], [Extraction(
        subject="lynx", predicate="have", object="black ear tuft",
        surface_subject="", surface_predicate="", surface_object="",
        facets=(), subject_is_pronoun=False,
        object_tokens=(ObjectToken("black", "black", "ADJ", "amod"),
                       ObjectToken("ear", "ear", "NOUN", "compound"),
                       ObjectToken("tuft", "tuft", "NOUN", "head")))],
        "lynx", lexicon)
    assert tuft == {"ear tuft": 1}

    have_trunk = Extraction(
        subject="elephant", predicate="have", object="a very long trunk",
        surface_subject="Elephants", surface_predicate="have",
        surface_object="a very long trunk", facets=(),
        subject_is_pronoun=False,
        object_tokens=(ObjectToken("a", "a", "DET", "det"),
                       ObjectToken("very", "very", "ADV", "adv_of_amod"),
                       ObjectToken("long", "long", "ADJ", "amod"),
                       ObjectToken("trunk", "trunk", "NOUN", "head")))
    routing = route_assertions([have_trunk], "elephant", [], {"trunk": 4},
                               lexicon)
    rewrites = [(r.extraction.subject, r.extraction.predicate,
                 r.extraction.object,
                 [(f.key, f.value) for f in r.extraction.facets])
                for r in routing.aspect]
    assert rewrites == [("elephant trunk", "be", "long", [("degree", "very")])]
    _pass("subgroup/aspect rules: variant merge, containment absorption, "
          "foreign-hyponym and named-entity exclusion, compound aspects, "
          "adjective-object rewrite")


def _context_fixture_kb():
    rng = random.Random(1234)
    subjects = ["rat", "elephant", "lion", "car", "teacher"]
    nouns = ["night", "grass", "city", "road", "school", "forest", "water",
             "trick", "herd", "wheel"]
    adjectives = ["smart", "fast", "quiet", "old", "gray", "strong"]
    verbs = [("be", "are"), ("eat", "eat"), ("carry", "carry"),
             ("teach", "teach"), ("hunt", "hunt")]
    entries = [SubjectEntry(name=s, kind=SubjectKind.PRIMARY) for s in subjects]
    pools = {s: [] for s in subjects}
    for index in range(50):
        subject = subjects[index % len(subjects)]
        predicate, surface_predicate = rng.choice(verbs)
        obj = " ".join(rng.sample(adjectives + nouns, rng.randint(1, 2)))
        facets = tuple(
            Facet(key=rng.choice(list(FacetKey)),
                  value=f"{rng.choice(['at', 'in', 'near'])} {rng.choice(nouns)}",
                  frequency=rng.randint(1, 4))
            for _ in range(rng.randint(0, 2)))
        pools[subject].append(FacetedAssertion(
            subject=subject, predicate=predicate, object=obj, facets=facets,
            surface_subject=subject, surface_predicate=surface_predicate,
            surface_object=obj, frequency=rng.randint(1, 9)))
    return KnowledgeBase.from_pools(entries, pools)


def test_c7_context_builder_oracle():
    kb = _context_fixture_kb()
    total = sum(len(v) for v in kb.assertions.values())
    assert total == 50
    rng = random.Random(777)
    nouns = ["night", "grass", "city", "road", "school", "forest", "water"]
    queries = [
        f"{rng.choice(['when', 'where', 'why', 'how'])} do "
        f"{rng.choice(['rats', 'elephants', 'lions', 'cars', 'teachers'])} "
        f"{rng.choice(['go', 'eat', 'hunt', 'sleep'])} {rng.choice(nouns)}"
        for _ in range(20)
    ]
    for query in queries:
        for mode in (TRIPLES_ONLY, WITH_FACETS):
            ranked = build_context(
                ContextRequest(query=query, char_limit=10 ** 6,
                               facet_mode=mode), kb)
            assert [c.sentence for c in ranked.used] == \
                oracle_ranking(kb, query, mode == WITH_FACETS)
            capped = build_context(
                ContextRequest(query=query, char_limit=256, facet_mode=mode), kb)
            assert len(capped.text) <= 256

    rat_kb = KnowledgeBase.from_pools(
        [SubjectEntry(name="rat", kind=SubjectKind.PRIMARY)],
        {"rat": [FacetedAssertion(
            subject="rat", predicate="be", object="nocturnal",
            facets=(Facet(FacetKey.DEGREE, "mainly", frequency=5,
                          head_pos="ADV"),
                    Facet(FacetKey.LOCATION, "in cities", frequency=1)),
            surface_subject="rat", surface_predicate="are",
            surface_object="nocturnal")]})
    context = build_context(ContextRequest(query="When are rats awake?",
                                           facet_mode=WITH_FACETS), rat_kb)
    assert context.text == "Rats are mainly nocturnal."
    _pass("context builder: 20 queries match the brute-force oracle in both "
          "modes; contexts stay under 256 characters; most frequent facet used")


def test_c8_end_to_end_smoke(tmp_path):
    started = time.perf_counter()
    summary = run_pipeline(demo_config(tmp_path))
    elapsed = time.perf_counter() - started
    assert summary.failures == []
    kb = summary.kb
    by_kind = {}
    for entry in kb.subjects.values():
        by_kind.setdefault(entry.kind, []).append(entry.name)
    assert len(kb.ranked("elephant")) >= 5
    assert len(by_kind.get(SubjectKind.SUBGROUP, [])) >= 1
    assert len(by_kind.get(SubjectKind.ASPECT, [])) >= 1

    path = tmp_path / "roundtrip.jsonl"
    save_kb(kb, path)
    loaded = load_kb(path)
    assert loaded.subjects == dict(kb.subjects)
    assert loaded.assertions == dict(kb.assertions)
    assert elapsed < 10.0
    _pass(f"end-to-end smoke: {len(kb.ranked('elephant'))} primary assertions, "
          f"{len(by_kind[SubjectKind.SUBGROUP])} subgroups, "
          f"{len(by_kind[SubjectKind.ASPECT])} aspects, round trip identity, "
          f"{elapsed:.1f}s")


def test_c9_external_scorer_protocol(tmp_path):
    queries = [q for q, _ in SHOWCASE]
    recorded = {q.facet_value: key.value for q, key in SHOWCASE}
    responses = tmp_path / "facets.json"
    responses.write_text(json.dumps(recorded), encoding="utf-8")
    with LineScorer(scorer_command("recorded_facet_scorer.py",
                                   str(responses))) as scorer:
        keys = type_facets_external(queries, scorer)
    assert keys == [key for _, key in SHOWCASE]

    pool = [FacetedAssertion(subject="s", predicate="be", object="often",
                             frequency=2),
            FacetedAssertion(subject="s", predicate="be", object="frequently")]
    pairs = {"be|often||be|frequently": 0.9}
    pair_path = tmp_path / "pairs.json"
    pair_path.write_text(json.dumps(pairs), encoding="utf-8")
    from facetkb.embeddings import EmbeddingTable

    emb = EmbeddingTable(2, {"x": [1, 0]})
    with LineScorer(scorer_command("recorded_pair_scorer.py",
                                   str(pair_path))) as scorer:
        clusters = cluster_triples(pool, emb, ExternalPairScorer(scorer),
                                   k=2, threshold=0.5)
    assert len(clusters) == 1 and clusters[0].frequency == 3

    with LineScorer(scorer_command("echo_label_scorer.py", "bogus")) as scorer:
        try:
            type_facets_external(queries[:1], scorer)
            raise AssertionError("unknown label must be a protocol error")
        except ScorerProtocolError:
            pass
    with LineScorer(scorer_command("misbehaving_scorer.py",
                                   "out-of-range")) as scorer:
        try:
            cluster_triples(pool, emb, ExternalPairScorer(scorer), k=2,
                            threshold=0.5)
            raise AssertionError("out-of-range similarity must be a protocol error")
        except ScorerProtocolError:
            pass
    _pass("external scorers: recorded stubs drive facet typing and pair "
          "scoring; malformed responses raise protocol errors")
