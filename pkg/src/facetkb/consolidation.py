"""Per-subject assertion consolidation.

Equivalent assertions are grouped by single-linkage clustering over a sparse
distance matrix: assertions are sorted by frequency, embedding similarities of
predicate-object texts pre-filter the candidate pairs, and only each
assertion's top-k most similar successors get a scorer distance; every other
pair sits at distance 1.0. Facet values are clustered per type afterwards.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .embeddings import EmbeddingTable, phrase_vector
from .expansion import RoutedAssertion
from .facets import FacetQuery, type_facet_heuristic
from .model import Facet, FacetedAssertion, FacetKey
from .scorer import EmbeddingPairScorer, ScorerProtocolError


@dataclass(frozen=True)
class PairScore:
    left: int
    right: int
    similarity: float

    def __post_init__(self):
        if not 0.0 <= self.similarity <= 1.0:
            raise ValueError("similarity must be in [0, 1]")


class SparseDistanceMatrix:
    """Symmetric pair -> distance map; absent pairs default to 1.0."""

    def __init__(self, n: int):
        self.n = n
        self.entries: dict[tuple[int, int], float] = {}

    @staticmethod
    def _key(i: int, j: int) -> tuple[int, int]:
        return (i, j) if i < j else (j, i)

    def set(self, i: int, j: int, distance: float) -> None:
        self.entries[self._key(i, j)] = distance

    def get(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        return self.entries.get(self._key(i, j), 1.0)


@dataclass(frozen=True)
class AssertionCluster:
    """Members in frequency-sorted order plus the elected representative."""

    members: tuple[FacetedAssertion, ...]
    representative: FacetedAssertion
    frequency: int


def score_pairs_external(pairs: Sequence[tuple[int, int]],
                         assertions: Sequence[FacetedAssertion],
                         scorer) -> list[PairScore]:
    """Similarity per assertion-index pair, order-preserving by pair id.
    Out-of-range scores surface as protocol errors from the scorer."""
    queries = [
        (assertions[i].predicate, assertions[i].object,
         assertions[j].predicate, assertions[j].object)
        for i, j in pairs
    ]
    similarities = scorer.score_pairs(queries)
    return [PairScore(left=i, right=j, similarity=s)
            for (i, j), s in zip(pairs, similarities)]


def _pairwise_similarities(texts: list[str], emb: EmbeddingTable) -> np.ndarray:
    """Embedding cosine over predicate-object texts; pairs without vectors
    rank last at -1 (identical texts at 1) but may still fall inside a top-k
    window -- the window is a count, not a similarity cut."""
    n = len(texts)
    vectors = [phrase_vector(t, emb) for t in texts]
    sim = np.full((n, n), -1.0)
    have = [i for i, v in enumerate(vectors) if v is not None and np.any(v)]
    if have:
        matrix = np.stack([vectors[i] for i in have])
        norms = np.linalg.norm(matrix, axis=1, keepdims=True)
        unit = matrix / norms
        block = unit @ unit.T
        for row, i in enumerate(have):
            sim[i, have] = block[row]
    for i in range(n):
        for j in range(n):
            if texts[i] == texts[j]:
                sim[i, j] = 1.0
    return sim


def build_sparse_distances(assertions: Sequence[FacetedAssertion],
                           emb: EmbeddingTable, scorer, k: int,
                           embedding_fallback: bool = False,
                           ) -> tuple[list[int], SparseDistanceMatrix]:
    """Steps 1-3: frequency ordering, embedding prefilter, sparse scoring.

    Returns the frequency-sorted index order (into ``assertions``) and the
    sparse distance matrix over positions in that order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = len(assertions)
    order = sorted(range(n), key=lambda i: -assertions[i].frequency)
    ordered = [assertions[i] for i in order]
    texts = [f"{a.predicate} {a.object}" for a in ordered]
    sim = _pairwise_similarities(texts, emb)

    pairs: list[tuple[int, int]] = []
    for i in range(n):
        successors = list(range(i + 1, n))
        successors.sort(key=lambda j: (-sim[i, j], j))
        pairs.extend((i, j) for j in successors[:k])

    matrix = SparseDistanceMatrix(n)
    if pairs:
        try:
            scores = score_pairs_external(pairs, ordered, scorer)
        except ScorerProtocolError:
            if not embedding_fallback:
                raise
            scores = score_pairs_external(pairs, ordered, EmbeddingPairScorer(emb))
        for pair_score in scores:
            matrix.set(pair_score.left, pair_score.right, 1.0 - pair_score.similarity)
    return order, matrix


def _single_linkage_components(n: int, matrix: SparseDistanceMatrix,
                               threshold: float) -> list[list[int]]:
    # Single-linkage HAC cut at a distance threshold equals the connected
    # components over edges with distance <= threshold.
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), distance in matrix.entries.items():
        if distance <= threshold:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[root] for root in sorted(groups)]


def pick_representative(members: Sequence[FacetedAssertion]) -> FacetedAssertion:
    """Most frequent member; ties go to the earliest in the given order."""
    if not members:
        raise ValueError("empty cluster")
    best = members[0]
    for member in members[1:]:
        if member.frequency > best.frequency:
            best = member
    return best


def cluster_triples(assertions: Sequence[FacetedAssertion], emb: EmbeddingTable,
                    scorer, k: int = 100, threshold: float = 0.5,
                    embedding_fallback: bool = False) -> list[AssertionCluster]:
    """Group one subject's assertions; see module docstring for the scheme."""
    if not assertions:
        return []
    order, matrix = build_sparse_distances(assertions, emb, scorer, k,
                                           embedding_fallback)
    ordered = [assertions[i] for i in order]
    clusters = []
    for component in _single_linkage_components(len(ordered), matrix, threshold):
        members = tuple(ordered[i] for i in sorted(component))
        clusters.append(AssertionCluster(
            members=members,
            representative=pick_representative(members),
            frequency=sum(m.frequency for m in members)))
    return clusters


def _facet_head_word(facet: Facet) -> str:
    if facet.head_lemma:
        return facet.head_lemma
    tokens = facet.value.split()
    return tokens[-1] if tokens else facet.value


def cluster_facet_values(values: Sequence[Facet], key: FacetKey,
                         emb: EmbeddingTable,
                         distance_threshold: float = 0.3) -> list[Facet]:
    """Group one cluster's facet values for one key: adverb values by vector
    distance, everything else by identical head word. Each group keeps its
    most frequent value with the summed count. Idempotent."""
    values = list(values)
    if not values:
        return []
    adverb_indices = [i for i, f in enumerate(values) if f.head_pos == "ADV"]
    other_indices = [i for i, f in enumerate(values) if f.head_pos != "ADV"]

    groups: list[list[int]] = []
    by_head: dict[str, list[int]] = {}
    for i in other_indices:
        by_head.setdefault(_facet_head_word(values[i]), []).append(i)
    groups.extend(by_head.values())

    if adverb_indices:
        vectors = [phrase_vector(values[i].value, emb) for i in adverb_indices]
        parent = list(range(len(adverb_indices)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in range(len(adverb_indices)):
            for b in range(a + 1, len(adverb_indices)):
                va, vb = vectors[a], vectors[b]
                same = values[adverb_indices[a]].value == values[adverb_indices[b]].value
                if same:
                    close = True
                elif va is None or vb is None or not np.any(va) or not np.any(vb):
                    close = False
                else:
                    unit_a = va / np.linalg.norm(va)
                    unit_b = vb / np.linalg.norm(vb)
                    close = 1.0 - float(unit_a @ unit_b) <= distance_threshold
                if close:
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        adverb_groups: dict[int, list[int]] = {}
        for pos, i in enumerate(adverb_indices):
            adverb_groups.setdefault(find(pos), []).append(i)
        groups.extend(adverb_groups.values())

    groups.sort(key=min)
    merged = []
    for group in groups:
        members = [values[i] for i in group]
        best = members[0]
        for member in members[1:]:
            if member.frequency > best.frequency:
                best = member
        merged.append(replace(best, frequency=sum(f.frequency for f in members)))
    return merged


def merge_cluster(cluster: AssertionCluster, emb: EmbeddingTable,
                  facet_distance_threshold: float = 0.3) -> FacetedAssertion:
    """Collapse a cluster into its representative: summed frequency, unioned
    sources, facet values clustered per key."""
    rep = cluster.representative
    ordered_members = [rep] + [m for m in cluster.members if m is not rep]
    combined: list[Facet] = []
    for member in ordered_members:
        combined.extend(member.facets)
    by_key: dict[FacetKey, list[Facet]] = {}
    key_order: list[FacetKey] = []
    for facet in combined:
        if facet.key not in by_key:
            key_order.append(facet.key)
        by_key.setdefault(facet.key, []).append(facet)
    facets: list[Facet] = []
    for key in key_order:
        for facet in cluster_facet_values(by_key[key], key, emb,
                                          facet_distance_threshold):
            # Head metadata has done its job once values are clustered; the
            # final assertion carries exactly the wire-format fields.
            facets.append(replace(facet, head_pos=None, head_lemma=None))
    sources = frozenset().union(*(m.source_doc_ids for m in cluster.members))
    return replace(rep, facets=tuple(facets), frequency=cluster.frequency,
                   source_doc_ids=sources)


def _facet_from_extracted(facet, extraction, weight: int) -> Facet:
    if facet.key is not None:
        key = FacetKey.parse(facet.key)
    else:
        # Untyped facets can only arrive when the typing stage was skipped;
        # the heuristic stands in.
        key = type_facet_heuristic(FacetQuery(
            subject=extraction.subject or "-",
            predicate=extraction.predicate or "-",
            object=extraction.object or "-",
            facet_value=facet.value,
            post_prep_pos=facet.post_prep_pos))
    return Facet(key=key, value=facet.value, frequency=weight,
                 head_pos=facet.head_pos, head_lemma=facet.head_lemma)


def pool_assertions(routed: Sequence[RoutedAssertion]) -> dict[str, list[FacetedAssertion]]:
    """Merge routed assertions into per-subject pools of faceted assertions,
    collapsing identical (subject, predicate, object) extractions."""
    pools: dict[str, dict[tuple[str, str, str], dict]] = {}
    for item in routed:
        extraction = item.extraction
        pool = pools.setdefault(item.name, {})
        key = (item.name, extraction.predicate, extraction.object)
        slot = pool.get(key)
        if slot is None:
            slot = {
                "surface": (extraction.surface_subject,
                            extraction.surface_predicate,
                            extraction.surface_object),
                "frequency": 0,
                "facets": {},
                "facet_order": [],
                "sources": set(),
            }
            pool[key] = slot
        slot["frequency"] += item.weight
        if extraction.doc_id:
            slot["sources"].add(extraction.doc_id)
        for facet in extraction.facets:
            facet_key = (facet.key, facet.value)
            if facet_key not in slot["facets"]:
                slot["facet_order"].append(facet_key)
                slot["facets"][facet_key] = [facet, extraction, 0]
            slot["facets"][facet_key][2] += item.weight
    out: dict[str, list[FacetedAssertion]] = {}
    for name, pool in pools.items():
        assertions = []
        for (subject, predicate, obj), slot in pool.items():
            facets = tuple(
                _facet_from_extracted(*slot["facets"][fk])
                for fk in slot["facet_order"]
            )
            assertions.append(FacetedAssertion(
                subject=subject, predicate=predicate, object=obj,
                facets=facets,
                surface_subject=slot["surface"][0],
                surface_predicate=slot["surface"][1],
                surface_object=slot["surface"][2],
                frequency=slot["frequency"],
                source_doc_ids=frozenset(slot["sources"])))
        out[name] = assertions
    return out


def consolidate_pool(pool: Sequence[FacetedAssertion], emb: EmbeddingTable,
                     scorer, k: int = 100, threshold: float = 0.5,
                     embedding_fallback: bool = False,
                     facet_distance_threshold: float = 0.3,
                     ) -> tuple[list[FacetedAssertion], int]:
    """Cluster and merge one subject's pool; returns the merged assertions and
    the cluster count."""
    clusters = cluster_triples(pool, emb, scorer, k=k, threshold=threshold,
                               embedding_fallback=embedding_fallback)
    merged = [merge_cluster(c, emb, facet_distance_threshold) for c in clusters]
    return merged, len(clusters)
