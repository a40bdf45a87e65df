from __future__ import annotations

import json
import random

import numpy as np
import pytest

from facetkb.consolidation import (AssertionCluster, SparseDistanceMatrix,
                                   cluster_facet_values, cluster_triples,
                                   consolidate_pool, merge_cluster,
                                   pick_representative, pool_assertions,
                                   score_pairs_external)
from facetkb.embeddings import EmbeddingTable
from facetkb.expansion import RoutedAssertion
from facetkb.extraction import ExtractedFacet, Extraction
from facetkb.model import Facet, FacetedAssertion, FacetKey, SubjectKind
from facetkb.scorer import (EmbeddingPairScorer, ExternalPairScorer, LineScorer,
                            ScorerProtocolError)

from .conftest import scorer_command


def assertion(predicate, obj, frequency=1, facets=(), subject="s"):
    return FacetedAssertion(subject=subject, predicate=predicate, object=obj,
                            frequency=frequency, facets=tuple(facets))


def random_instance(rng: random.Random, max_n: int = 50):
    """A random embedding table plus a pool of assertions over its vocabulary."""
    vocab = [f"w{k}" for k in range(20)]
    dim = 8
    table = EmbeddingTable(dim, {
        w: [rng.uniform(-1, 1) for _ in range(dim)] for w in vocab
    })
    n = rng.randint(2, max_n)
    verbs = ["be", "eat", "hunt", "carry"]
    pool = [
        assertion(rng.choice(verbs),
                  " ".join(rng.sample(vocab, rng.randint(1, 3))),
                  frequency=rng.randint(1, 10))
        for _ in range(n)
    ]
    threshold = rng.uniform(0.05, 0.9)
    return table, pool, threshold


def oracle_partition(pool, table, threshold):
    """Separately implemented full-matrix single-linkage HAC (scipy)."""
    from scipy.cluster.hierarchy import fcluster, linkage
    from scipy.spatial.distance import squareform

    n = len(pool)
    scorer = EmbeddingPairScorer(table)
    if n == 1:
        return {frozenset({0})}
    matrix = np.ones((n, n))
    np.fill_diagonal(matrix, 0.0)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    scores = scorer.score_pairs([
        (pool[i].predicate, pool[i].object, pool[j].predicate, pool[j].object)
        for i, j in pairs
    ])
    for (i, j), score in zip(pairs, scores):
        matrix[i, j] = matrix[j, i] = 1.0 - score
    labels = fcluster(linkage(squareform(matrix, checks=False), method="single"),
                      t=threshold, criterion="distance")
    groups: dict[int, set[int]] = {}
    for index, label in enumerate(labels):
        groups.setdefault(label, set()).add(index)
    return {frozenset(g) for g in groups.values()}


def partition_of(clusters, pool):
    index = {id(a): i for i, a in enumerate(pool)}
    return {frozenset(index[id(m)] for m in c.members) for c in clusters}


def test_identical_assertions_form_one_cluster():
    table = EmbeddingTable(2, {"x": [1, 0]})
    pool = [assertion("eat", "qqq zzz"), assertion("eat", "qqq zzz")]
    for k in (1, 2, 5):
        clusters = cluster_triples(pool, table, EmbeddingPairScorer(table),
                                   k=k, threshold=0.3)
        assert len(clusters) == 1
        assert clusters[0].frequency == 2


def test_all_far_pairs_stay_singletons():
    table = EmbeddingTable(2, {"x": [1, 0]})
    pool = [assertion("eat", f"oov{i}") for i in range(4)]
    clusters = cluster_triples(pool, table, EmbeddingPairScorer(table),
                               k=4, threshold=0.9)
    assert len(clusters) == 4


def test_sparse_equivalence_with_full_matrix_oracle():
    rng = random.Random(20250809)
    for _ in range(20):
        table, pool, threshold = random_instance(rng, max_n=30)
        clusters = cluster_triples(pool, table, EmbeddingPairScorer(table),
                                   k=len(pool), threshold=threshold)
        assert partition_of(clusters, pool) == oracle_partition(pool, table,
                                                                threshold)


def test_growing_k_never_splits_linked_pairs():
    rng = random.Random(99)
    table, pool, threshold = random_instance(rng, max_n=25)
    previous: set[frozenset[int]] | None = None
    for k in range(1, len(pool) + 1):
        clusters = cluster_triples(pool, table, EmbeddingPairScorer(table),
                                   k=k, threshold=threshold)
        partition = partition_of(clusters, pool)
        if previous is not None:
            for group in previous:
                assert any(group <= bigger for bigger in partition)
        previous = partition


def test_representative_rules():
    a = assertion("be", "big", frequency=3)
    b = assertion("be", "large", frequency=1)
    assert pick_representative([a, b]) is a
    tie_a = assertion("be", "one", frequency=2)
    tie_b = assertion("be", "two", frequency=2)
    assert pick_representative([tie_a, tie_b]) is tie_a
    single = assertion("be", "alone")
    assert pick_representative([single]) is single
    with pytest.raises(ValueError):
        pick_representative([])


def test_frequency_conservation_on_random_pools():
    rng = random.Random(4242)
    for _ in range(25):
        table, pool, threshold = random_instance(rng, max_n=40)
        clusters = cluster_triples(pool, table, EmbeddingPairScorer(table),
                                   k=rng.randint(1, len(pool)),
                                   threshold=threshold)
        assert sum(c.frequency for c in clusters) == \
            sum(a.frequency for a in pool)
        for cluster in clusters:
            top = max(m.frequency for m in cluster.members)
            assert cluster.representative.frequency == top


def test_k_must_be_positive():
    table = EmbeddingTable(2, {"x": [1, 0]})
    with pytest.raises(ValueError):
        cluster_triples([assertion("be", "x")], table,
                        EmbeddingPairScorer(table), k=0, threshold=0.5)


def test_score_pairs_external_roundtrip():
    pool = [assertion("be", "big"), assertion("be", "big"),
            assertion("eat", "grass")]
    with LineScorer(scorer_command("pair_echo_scorer.py")) as line:
        scores = score_pairs_external([(0, 1), (0, 2)], pool,
                                      ExternalPairScorer(line))
    assert [(s.left, s.right, s.similarity) for s in scores] == \
        [(0, 1, 1.0), (0, 2, 0.0)]


def test_recorded_pair_scorer_reproduces_embedding_clusters(tmp_path, embeddings):
    pool = [
        assertion("be", "often", frequency=4),
        assertion("be", "frequently", frequency=2),
        assertion("be", "rarely", frequency=2),
        assertion("hunt", "canadian", frequency=1),
        assertion("hunt", "canada", frequency=1),
    ]
    reference = cluster_triples(pool, embeddings, EmbeddingPairScorer(embeddings),
                                k=len(pool), threshold=0.3)
    # Record what the embedding scorer answers for every scored pair, then
    # replay it through the external protocol.
    order = sorted(range(len(pool)), key=lambda i: -pool[i].frequency)
    ordered = [pool[i] for i in order]
    responses = {}
    scorer = EmbeddingPairScorer(embeddings)
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            a, b = ordered[i], ordered[j]
            score = scorer.score_pairs([(a.predicate, a.object,
                                         b.predicate, b.object)])[0]
            responses[f"{a.predicate}|{a.object}||{b.predicate}|{b.object}"] = score
    path = tmp_path / "pairs.json"
    path.write_text(json.dumps(responses), encoding="utf-8")
    with LineScorer(scorer_command("recorded_pair_scorer.py", str(path))) as line:
        replayed = cluster_triples(pool, embeddings, ExternalPairScorer(line),
                                   k=len(pool), threshold=0.3)
    assert partition_of(replayed, pool) == partition_of(reference, pool)


def test_scorer_failure_errors_unless_fallback(embeddings):
    pool = [assertion("be", "often"), assertion("be", "frequently")]
    command = scorer_command("misbehaving_scorer.py", "die")
    with LineScorer(command) as line:
        with pytest.raises(ScorerProtocolError):
            cluster_triples(pool, embeddings, ExternalPairScorer(line),
                            k=2, threshold=0.3)
    with LineScorer(command) as line:
        clusters = cluster_triples(pool, embeddings, ExternalPairScorer(line),
                                   k=2, threshold=0.3, embedding_fallback=True)
    assert len(clusters) == 1  # often/frequently vectors sit together


def test_facet_values_group_by_head_word(embeddings):
    values = [Facet(FacetKey.TEMPORAL, "during evening", frequency=3,
                    head_pos="NOUN", head_lemma="evening"),
              Facet(FacetKey.TEMPORAL, "in the evening", frequency=1,
                    head_pos="NOUN", head_lemma="evening")]
    merged = cluster_facet_values(values, FacetKey.TEMPORAL, embeddings)
    assert len(merged) == 1
    assert merged[0].value == "during evening"
    assert merged[0].frequency == 4


def test_adverb_facets_cluster_by_vectors(embeddings):
    values = [Facet(FacetKey.DEGREE, "often", frequency=2, head_pos="ADV"),
              Facet(FacetKey.DEGREE, "frequently", frequency=1, head_pos="ADV"),
              Facet(FacetKey.DEGREE, "rarely", frequency=1, head_pos="ADV")]
    merged = cluster_facet_values(values, FacetKey.DEGREE, embeddings)
    assert {(f.value, f.frequency) for f in merged} == {("often", 3),
                                                        ("rarely", 1)}


def test_single_facet_value_is_itself(embeddings):
    values = [Facet(FacetKey.MANNER, "with claws", head_pos="NOUN",
                    head_lemma="claw")]
    assert cluster_facet_values(values, FacetKey.MANNER, embeddings) == values


def test_facet_clustering_idempotent(embeddings):
    values = [Facet(FacetKey.DEGREE, "often", frequency=2, head_pos="ADV"),
              Facet(FacetKey.DEGREE, "frequently", frequency=1, head_pos="ADV"),
              Facet(FacetKey.TEMPORAL, "during evening", head_pos="NOUN",
                    head_lemma="evening")]
    once = cluster_facet_values(values, FacetKey.DEGREE, embeddings)
    twice = cluster_facet_values(once, FacetKey.DEGREE, embeddings)
    assert once == twice


def test_merge_cluster_combines_facets(embeddings):
    a = assertion("be", "active", frequency=3,
                  facets=[Facet(FacetKey.TEMPORAL, "during evening",
                                head_pos="NOUN", head_lemma="evening")])
    b = assertion("be", "active", frequency=1,
                  facets=[Facet(FacetKey.TEMPORAL, "in the evening",
                                head_pos="NOUN", head_lemma="evening"),
                          Facet(FacetKey.DEGREE, "often", head_pos="ADV")])
    cluster = AssertionCluster(members=(a, b), representative=a, frequency=4)
    merged = merge_cluster(cluster, embeddings)
    assert merged.frequency == 4
    assert (merged.predicate, merged.object) == ("be", "active")
    by_key = {(f.key, f.value): f.frequency for f in merged.facets}
    assert by_key == {(FacetKey.TEMPORAL, "during evening"): 2,
                      (FacetKey.DEGREE, "often"): 1}


def _routed(name, predicate, obj, weight=1, facets=(), doc="d1"):
    extraction = Extraction(
        subject=name, predicate=predicate, object=obj,
        surface_subject=name.title(), surface_predicate=predicate,
        surface_object=obj, facets=tuple(facets), subject_is_pronoun=False,
        object_tokens=(), doc_id=doc)
    return RoutedAssertion(name=name, kind=SubjectKind.PRIMARY, parent=None,
                           extraction=extraction, weight=weight)


def test_pool_assertions_merges_identical_triples():
    routed = [
        _routed("elephant", "eat", "grass", doc="d1",
                facets=[ExtractedFacet(value="often", origin="adverb-mod",
                                       key="degree", head_pos="ADV")]),
        _routed("elephant", "eat", "grass", doc="d2",
                facets=[ExtractedFacet(value="often", origin="adverb-mod",
                                       key="degree", head_pos="ADV")]),
        _routed("elephant", "be", "gray", weight=3),
    ]
    pools = pool_assertions(routed)
    merged = {(a.predicate, a.object): a for a in pools["elephant"]}
    eats = merged[("eat", "grass")]
    assert eats.frequency == 2
    assert eats.source_doc_ids == {"d1", "d2"}
    assert eats.facets == (Facet(FacetKey.DEGREE, "often", frequency=2,
                                 head_pos="ADV"),)
    assert merged[("be", "gray")].frequency == 3


def test_consolidate_pool_counts(embeddings):
    pool = [assertion("be", "often", frequency=2),
            assertion("be", "frequently", frequency=1),
            assertion("eat", "canadian", frequency=1)]
    merged, clusters = consolidate_pool(pool, embeddings,
                                        EmbeddingPairScorer(embeddings),
                                        k=10, threshold=0.3)
    assert clusters == len(merged) == 2
    assert sum(a.frequency for a in merged) == 4


def test_sparse_matrix_defaults():
    matrix = SparseDistanceMatrix(3)
    assert matrix.get(0, 1) == 1.0
    assert matrix.get(1, 1) == 0.0
    matrix.set(2, 0, 0.25)
    assert matrix.get(0, 2) == 0.25
