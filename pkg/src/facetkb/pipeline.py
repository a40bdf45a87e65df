"""End-to-end pipeline: discover, filter, extract, type facets, expand,
consolidate; one subject at a time, subjects isolated from each other's
failures. Subjects run on a bounded worker pool.
"""
from __future__ import annotations

import json
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

from .consolidation import consolidate_pool, pool_assertions
from .discovery import (DocumentFetcher, FilterConfig, HttpFetcher,
                        OfflineCorpusFetcher, build_query, filter_documents,
                        load_templates, select_reference)
from .embeddings import EmbeddingTable, load_embeddings
from .expansion import (ExpansionConfig, RoutingResult, aggregate_chunks,
                        collect_aspects, collect_subgroups, route_assertions)
from .extraction import ChunkOccurrence, Extraction, extract_document
from .facets import FacetQuery, type_facet_heuristic, type_facets_external
from .lexicon import Lexicon, load_lexicon
from .model import (FacetedAssertion, KnowledgeBase, SubjectEntry, SubjectKind,
                    save_kb)
from .parsing import ParsedDocument, read_corpus
from .query import kb_stats
from .scorer import EmbeddingPairScorer, ExternalPairScorer, LineScorer
from .textutil import DEFAULT_STOPWORDS, load_stopwords


@dataclass
class PipelineConfig:
    subjects: list[str]
    lexicon: str
    embeddings: str
    templates: str
    parsed_corpus: str
    out_dir: str
    corpus_dir: str | None = None
    endpoint: str | None = None
    pairings: str | None = None
    stopwords: str | None = None
    rho: float = 0.45
    max_documents: int = 500
    min_support: int = 3
    subgroup_distance: float = 0.15
    cluster_k: int = 100
    cluster_threshold: float | None = None
    facet_distance_threshold: float = 0.3
    facet_scorer: str | None = None
    pair_scorer: str | None = None
    scorer_timeout: float = 60.0
    scorer_fallback: bool = False
    encyclopedia_host: str = "wikipedia.org"
    workers: int = 1
    figures: bool = True

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**obj)


@dataclass
class SubjectReport:
    subject: str
    query: str = ""
    reference_id: str | None = None
    documents_fetched: int = 0
    documents_retained: int = 0
    retention_rate: float = 0.0
    no_reference: bool = False
    similarities: list[float] = field(default_factory=list)
    raw_assertions: int = 0
    chunks: int = 0
    subgroups: int = 0
    aspects: int = 0
    routed_primary: int = 0
    routed_subgroup: int = 0
    routed_aspect: int = 0
    dropped: int = 0
    pooled_assertions: int = 0
    clusters: int = 0

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "query": self.query,
            "reference": self.reference_id,
            "documents": {
                "fetched": self.documents_fetched,
                "retained": self.documents_retained,
                "retention_rate": round(self.retention_rate, 4),
                "no_reference": self.no_reference,
            },
            "raw_assertions": self.raw_assertions,
            "chunks": self.chunks,
            "subgroups": self.subgroups,
            "aspects": self.aspects,
            "routed": {
                "primary": self.routed_primary,
                "subgroup": self.routed_subgroup,
                "aspect": self.routed_aspect,
                "dropped": self.dropped,
            },
            "pooled_assertions": self.pooled_assertions,
            "clusters": self.clusters,
        }


@dataclass
class RunSummary:
    kb: KnowledgeBase
    reports: list[SubjectReport]
    failures: list[dict]
    out_dir: Path


@dataclass
class SharedResources:
    lexicon: Lexicon
    embeddings: EmbeddingTable
    templates: list
    parsed: dict[str, ParsedDocument]
    pairings: dict[str, str]
    stopwords: frozenset[str]


def _load_shared(config: PipelineConfig) -> SharedResources:
    stop = DEFAULT_STOPWORDS
    if config.stopwords:
        stop = load_stopwords(config.stopwords)
    pairings = {}
    if config.pairings:
        pairings = json.loads(Path(config.pairings).read_text(encoding="utf-8"))
    parsed = {doc.id: doc for doc in read_corpus(config.parsed_corpus)} \
        if Path(config.parsed_corpus).exists() else {}
    return SharedResources(
        lexicon=load_lexicon(config.lexicon),
        embeddings=load_embeddings(config.embeddings),
        templates=load_templates(config.templates),
        parsed=parsed,
        pairings=pairings,
        stopwords=stop,
    )


def _make_fetcher(config: PipelineConfig, subject: str) -> DocumentFetcher:
    if config.corpus_dir:
        root = Path(config.corpus_dir)
        per_subject = root / subject
        return OfflineCorpusFetcher(per_subject if per_subject.is_dir() else root)
    if config.endpoint:
        return HttpFetcher(config.endpoint)
    raise ValueError("config needs corpus_dir or endpoint")


def type_extraction_facets(extractions: Sequence[Extraction],
                           scorer_command: str | None = None,
                           timeout: float = 60.0,
                           fallback: bool = False) -> list[Extraction]:
    """Attach a facet key to every untyped facet value, through the external
    scorer when configured, otherwise the heuristic."""
    queries: list[FacetQuery] = []
    slots: list[tuple[int, int]] = []
    for index, extraction in enumerate(extractions):
        for position, facet in enumerate(extraction.facets):
            if facet.key is None:
                queries.append(FacetQuery(
                    subject=extraction.subject or "-",
                    predicate=extraction.predicate or "-",
                    object=extraction.object or "-",
                    facet_value=facet.value,
                    post_prep_pos=facet.post_prep_pos))
                slots.append((index, position))
    if not queries:
        return list(extractions)
    if scorer_command:
        with LineScorer(scorer_command, timeout=timeout) as scorer:
            keys = type_facets_external(queries, scorer, fallback=fallback)
    else:
        keys = [type_facet_heuristic(q) for q in queries]
    out = [e for e in extractions]
    facet_lists = {index: list(out[index].facets)
                   for index, _ in slots}
    for (index, position), key in zip(slots, keys):
        facet_lists[index][position] = replace(facet_lists[index][position],
                                               key=key.value)
    for index, facets in facet_lists.items():
        out[index] = replace(out[index], facets=tuple(facets))
    return out


@dataclass
class SubjectOutput:
    entries: list[SubjectEntry]
    pools: dict[str, list[FacetedAssertion]]
    report: SubjectReport


def process_subject(subject: str, config: PipelineConfig,
                    shared: SharedResources) -> SubjectOutput:
    report = SubjectReport(subject=subject)
    report.query = build_query(subject, shared.lexicon, shared.templates)

    fetcher = _make_fetcher(config, subject)
    docs = fetcher.fetch(report.query, config.max_documents)
    report.documents_fetched = len(docs)
    reference = select_reference(subject, shared.lexicon, docs, shared.pairings,
                                 config.encyclopedia_host)
    report.reference_id = reference.id if reference else None
    filter_config = FilterConfig(rho=config.rho, max_documents=config.max_documents,
                                 stopwords=shared.stopwords,
                                 encyclopedia_host=config.encyclopedia_host)
    result = filter_documents(docs, reference, filter_config)
    report.no_reference = result.no_reference
    report.similarities = [s.similarity for s in result.report]
    report.documents_retained = len(result.retained)
    report.retention_rate = (len(result.retained) / len(docs)) if docs else 0.0

    extractions: list[Extraction] = []
    chunks: list[ChunkOccurrence] = []
    for doc in result.retained:
        parsed = shared.parsed.get(doc.id)
        if parsed is None:
            continue
        doc_extractions, doc_chunks = extract_document(parsed)
        extractions.extend(doc_extractions)
        chunks.extend(doc_chunks)
    report.raw_assertions = len(extractions)
    report.chunks = len(chunks)

    extractions = type_extraction_facets(
        extractions, scorer_command=config.facet_scorer,
        timeout=config.scorer_timeout, fallback=config.scorer_fallback)

    expansion_config = ExpansionConfig(min_support=config.min_support,
                                       subgroup_distance=config.subgroup_distance)
    merged_chunks = aggregate_chunks(chunks)
    subgroups = collect_subgroups(merged_chunks, subject, shared.lexicon,
                                  shared.embeddings, expansion_config)
    aspect_support = collect_aspects(merged_chunks, extractions, subject,
                                     shared.lexicon)
    aspects = {term: count for term, count in aspect_support.items()
               if count >= config.min_support}
    report.subgroups = len(subgroups)
    report.aspects = len(aspects)

    routing = route_assertions(extractions, subject, subgroups, aspects,
                               shared.lexicon, merged_chunks)
    report.routed_primary = len(routing.primary)
    report.routed_subgroup = len(routing.subgroup)
    report.routed_aspect = len(routing.aspect)
    report.dropped = routing.dropped

    entries = build_subject_entries(subject, subgroups, aspects, routing)
    pools = pool_assertions(routing.primary + routing.subgroup + routing.aspect)
    report.pooled_assertions = sum(len(v) for v in pools.values())
    return SubjectOutput(entries=entries, pools=pools, report=report)


def build_subject_entries(subject: str, subgroups, aspects,
                          routing: RoutingResult) -> list[SubjectEntry]:
    """Subject inventory for one primary concept: the concept itself plus its
    discovered subgroups and aspects."""
    from .expansion import aspect_subject_name

    primary_support = max(1, sum(r.weight for r in routing.primary))
    entries = [SubjectEntry(name=subject, kind=SubjectKind.PRIMARY,
                            support=primary_support)]
    for cluster in subgroups:
        entries.append(SubjectEntry(
            name=cluster.representative, kind=SubjectKind.SUBGROUP,
            parent=subject, support=cluster.support))
    for term, support in aspects.items():
        entries.append(SubjectEntry(
            name=aspect_subject_name(subject, term), kind=SubjectKind.ASPECT,
            parent=subject, support=support))
    return entries


def _consolidation_scorer(config: PipelineConfig, embeddings: EmbeddingTable):
    if config.pair_scorer:
        scorer = ExternalPairScorer(LineScorer(config.pair_scorer,
                                               timeout=config.scorer_timeout))
        threshold = config.cluster_threshold if config.cluster_threshold is not None else 0.5
        return scorer, threshold
    scorer = EmbeddingPairScorer(embeddings)
    threshold = config.cluster_threshold if config.cluster_threshold is not None else 0.3
    return scorer, threshold


def run_pipeline(config: PipelineConfig) -> RunSummary:
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    shared = _load_shared(config)

    outputs: list[SubjectOutput] = []
    failures: list[dict] = []

    def guarded(subject: str):
        try:
            return process_subject(subject, config, shared)
        except Exception as exc:  # noqa: BLE001 - subject isolation by contract
            return {"subject": subject, "error": f"{type(exc).__name__}: {exc}",
                    "trace": traceback.format_exc(limit=5)}

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(guarded, config.subjects))
    else:
        results = [guarded(s) for s in config.subjects]
    for item in results:
        if isinstance(item, SubjectOutput):
            outputs.append(item)
        else:
            failures.append(item)

    scorer, threshold = _consolidation_scorer(config, shared.embeddings)
    entries: list[SubjectEntry] = []
    pools: dict[str, list[FacetedAssertion]] = {}
    reports: list[SubjectReport] = []
    try:
        for output in outputs:
            consolidated: dict[str, list[FacetedAssertion]] = {}
            cluster_count = 0
            for name, pool in output.pools.items():
                merged, clusters = consolidate_pool(
                    pool, shared.embeddings, scorer, k=config.cluster_k,
                    threshold=threshold, embedding_fallback=config.scorer_fallback,
                    facet_distance_threshold=config.facet_distance_threshold)
                consolidated[name] = merged
                cluster_count += clusters
            output.report.clusters = cluster_count
            entries.extend(output.entries)
            pools.update(consolidated)
            reports.append(output.report)
    finally:
        if isinstance(scorer, ExternalPairScorer):
            scorer.scorer.close()

    kb = KnowledgeBase.from_pools(entries, pools)
    save_kb(kb, out_dir / "kb.jsonl")
    report_payload = {
        "subjects": [r.to_json() for r in reports],
        "failures": failures,
        "stats": kb_stats(kb),
    }
    (out_dir / "report.json").write_text(
        json.dumps(report_payload, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8")

    if config.figures:
        from . import reporting

        figures = out_dir / "figures"
        figures.mkdir(exist_ok=True)
        all_similarities = [s for r in reports for s in r.similarities]
        reporting.render_similarity_histogram(all_similarities, config.rho,
                                              figures / "similarities.png")
        reporting.render_retention([r.subject for r in reports],
                                   [r.retention_rate for r in reports],
                                   figures / "retention.png")
        reporting.render_kind_counts(kb_stats(kb), figures / "kb_stats.png")
        reporting.write_stats_tsv(kb_stats(kb), out_dir / "stats.tsv")
    return RunSummary(kb=kb, reports=reports, failures=failures, out_dir=out_dir)
