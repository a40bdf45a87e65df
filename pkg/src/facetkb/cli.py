"""Command-line interface: discover, extract, type-facets, expand, consolidate,
pipeline, query and stats subcommands."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import records
from .consolidation import consolidate_pool, pool_assertions
from .discovery import (FilterConfig, HttpFetcher, OfflineCorpusFetcher,
                        build_query, filter_documents, load_templates,
                        select_reference)
from .embeddings import load_embeddings
from .expansion import (ExpansionConfig, aggregate_chunks, collect_aspects,
                        collect_subgroups, route_assertions)
from .extraction import extract_document
from .lexicon import load_lexicon
from .model import KnowledgeBase, load_kb, save_kb
from .parsing import read_corpus
from .pipeline import (PipelineConfig, build_subject_entries, run_pipeline,
                       type_extraction_facets)
from .query import ContextRequest, TRIPLES_ONLY, WITH_FACETS, build_context, kb_stats
from .scorer import EmbeddingPairScorer, ExternalPairScorer, LineScorer
from .textutil import DEFAULT_STOPWORDS, load_stopwords


def _add_discover(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("discover", help="fetch and filter candidate documents")
    p.add_argument("--subject", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--templates", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--corpus-dir")
    src.add_argument("--endpoint")
    p.add_argument("--pairings")
    p.add_argument("--rho", type=float, default=0.45)
    p.add_argument("--max-docs", type=int, default=500)
    p.add_argument("--stopwords")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_run_discover)


def _run_discover(args: argparse.Namespace) -> int:
    lexicon = load_lexicon(args.lexicon)
    templates = load_templates(args.templates)
    stopwords = load_stopwords(args.stopwords) if args.stopwords else DEFAULT_STOPWORDS
    fetcher = OfflineCorpusFetcher(Path(args.corpus_dir)) if args.corpus_dir \
        else HttpFetcher(args.endpoint)
    query = build_query(args.subject, lexicon, templates)
    docs = fetcher.fetch(query, args.max_docs)
    pairings = json.loads(Path(args.pairings).read_text(encoding="utf-8")) \
        if args.pairings else None
    reference = select_reference(args.subject, lexicon, docs, pairings)
    cfg = FilterConfig(rho=args.rho, max_documents=args.max_docs,
                       stopwords=stopwords)
    result = filter_documents(docs, reference, cfg)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "documents.jsonl", "w", encoding="utf-8") as fh:
        for doc in result.retained:
            fh.write(json.dumps({"id": doc.id, "url": doc.url,
                                 "title": doc.title, "body": doc.body},
                                ensure_ascii=False) + "\n")
    with open(out / "report.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["doc_id", "similarity", "distance", "retained",
                         "no_reference"])
        for score in result.report:
            writer.writerow([score.doc_id, f"{score.similarity:.6f}",
                             f"{score.distance:.6f}", int(score.retained),
                             int(score.no_reference)])
    from . import reporting

    reporting.render_similarity_histogram(
        [s.similarity for s in result.report], args.rho,
        out / "similarities.png")
    if result.no_reference:
        print("warning: no reference article; every document retained",
              file=sys.stderr)
    print(f"query: {query}")
    print(f"retained {len(result.retained)} of {len(docs)} documents -> {out}")
    return 0


def _add_extract(sub) -> None:
    p = sub.add_parser("extract", help="run OIE over a parsed corpus")
    p.add_argument("--corpus", required=True, help="parsed corpus JSONL")
    p.add_argument("--subject", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_run_extract)


def _run_extract(args) -> int:
    extractions = []
    chunks = []
    for doc in read_corpus(args.corpus):
        doc_extractions, doc_chunks = extract_document(doc)
        extractions.extend(doc_extractions)
        chunks.extend(doc_chunks)
    records.write_stage_records(args.out, extractions, chunks)
    print(f"{args.subject}: {len(extractions)} raw assertions, "
          f"{len(chunks)} chunk occurrences -> {args.out}")
    return 0


def _add_type_facets(sub) -> None:
    p = sub.add_parser("type-facets", help="attach facet keys")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--scorer", help="external scorer command")
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--fallback", action="store_true",
                   help="fall back to the heuristic on scorer timeout")
    p.set_defaults(func=_run_type_facets)


def _run_type_facets(args) -> int:
    extractions, chunks = records.read_stage_records(args.infile)
    typed = type_extraction_facets(extractions, scorer_command=args.scorer,
                                   timeout=args.timeout, fallback=args.fallback)
    records.write_stage_records(args.out, typed, chunks)
    total = sum(len(e.facets) for e in typed)
    print(f"typed {total} facets over {len(typed)} assertions -> {args.out}")
    return 0


def _add_expand(sub) -> None:
    p = sub.add_parser("expand", help="discover subgroups/aspects and route assertions")
    p.add_argument("--raw", required=True, help="assertion/chunk records")
    p.add_argument("--subject", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--embeddings", required=True)
    p.add_argument("--min-support", type=int, default=3)
    p.add_argument("--subgroup-distance", type=float, default=0.15)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_run_expand)


def _run_expand(args) -> int:
    extractions, chunks = records.read_stage_records(args.raw)
    lexicon = load_lexicon(args.lexicon)
    embeddings = load_embeddings(args.embeddings)
    cfg = ExpansionConfig(min_support=args.min_support,
                          subgroup_distance=args.subgroup_distance)
    merged = aggregate_chunks(chunks)
    subgroups = collect_subgroups(merged, args.subject, lexicon, embeddings, cfg)
    aspect_support = collect_aspects(merged, extractions, args.subject, lexicon)
    aspects = {t: c for t, c in aspect_support.items() if c >= args.min_support}
    routing = route_assertions(extractions, args.subject, subgroups, aspects,
                               lexicon, merged)
    entries = build_subject_entries(args.subject, subgroups, aspects, routing)
    routed = routing.primary + routing.subgroup + routing.aspect
    records.write_routed_records(args.out, entries, routed)
    print(f"{args.subject}: {len(subgroups)} subgroups, {len(aspects)} aspects, "
          f"{len(routed)} routed / {routing.dropped} dropped -> {args.out}")
    return 0


def _add_consolidate(sub) -> None:
    p = sub.add_parser("consolidate", help="cluster assertions and build the KB")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--embeddings", required=True)
    p.add_argument("--scorer", help="external pair-scorer command")
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--k", type=int, default=100)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--facet-threshold", type=float, default=0.3)
    p.add_argument("--fallback", action="store_true",
                   help="fall back to the embedding scorer on scorer errors")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_run_consolidate)


def _run_consolidate(args) -> int:
    entries, routed = records.read_routed_records(args.infile)
    embeddings = load_embeddings(args.embeddings)
    pools = pool_assertions(routed)
    if args.scorer:
        line_scorer = LineScorer(args.scorer, timeout=args.timeout)
        scorer = ExternalPairScorer(line_scorer)
        threshold = args.threshold if args.threshold is not None else 0.5
    else:
        line_scorer = None
        scorer = EmbeddingPairScorer(embeddings)
        threshold = args.threshold if args.threshold is not None else 0.3
    consolidated = {}
    clusters_total = 0
    try:
        for name, pool in pools.items():
            merged, count = consolidate_pool(
                pool, embeddings, scorer, k=args.k, threshold=threshold,
                embedding_fallback=args.fallback,
                facet_distance_threshold=args.facet_threshold)
            consolidated[name] = merged
            clusters_total += count
    finally:
        if line_scorer is not None:
            line_scorer.close()
    kb = KnowledgeBase.from_pools(entries, consolidated)
    save_kb(kb, args.out)
    print(f"{clusters_total} clusters over {len(pools)} subjects -> {args.out}")
    return 0


def _add_pipeline(sub) -> None:
    p = sub.add_parser("pipeline", help="run the full pipeline from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_run_pipeline)


def _run_pipeline(args) -> int:
    config = PipelineConfig.from_file(args.config)
    summary = run_pipeline(config)
    for report in summary.reports:
        print(f"{report.subject}: {report.documents_retained}/"
              f"{report.documents_fetched} docs, {report.raw_assertions} raw, "
              f"{report.clusters} clusters")
    for failure in summary.failures:
        print(f"FAILED {failure['subject']}: {failure['error']}", file=sys.stderr)
    print(f"KB written to {summary.out_dir / 'kb.jsonl'}")
    return 1 if summary.failures and not summary.reports else 0


def _add_query(sub) -> None:
    p = sub.add_parser("query", help="build an LM-priming context for a question")
    p.add_argument("--kb", required=True)
    p.add_argument("--question", required=True)
    p.add_argument("--facets", action="store_true",
                   help="append the most frequent facet per statement")
    limit = p.add_mutually_exclusive_group()
    limit.add_argument("--limit", type=int, default=256,
                       help="context character limit")
    limit.add_argument("--top-n", type=int, default=None,
                       help="statement-count limit instead of characters")
    p.set_defaults(func=_run_query)


def _run_query(args) -> int:
    kb = load_kb(args.kb)
    request = ContextRequest(
        query=args.question,
        char_limit=args.limit,
        facet_mode=WITH_FACETS if args.facets else TRIPLES_ONLY,
        top_n=args.top_n)
    result = build_context(request, kb)
    print(result.text)
    return 0


def _add_stats(sub) -> None:
    p = sub.add_parser("stats", help="per-kind subject/assertion/facet counts")
    p.add_argument("--kb", required=True)
    p.add_argument("--tsv", help="also write the table to this path")
    p.add_argument("--figures", help="render figures into this directory")
    p.set_defaults(func=_run_stats)


def _run_stats(args) -> int:
    kb = load_kb(args.kb)
    stats = kb_stats(kb)
    print(f"{'kind':<10}{'#s':>8}{'#spo':>8}{'#facets':>9}")
    for kind in ("primary", "subgroup", "aspect", "all"):
        row = stats[kind]
        print(f"{kind:<10}{row['subjects']:>8}{row['assertions']:>8}"
              f"{row['facets']:>9}")
    from . import reporting

    if args.tsv:
        reporting.write_stats_tsv(stats, args.tsv)
    if args.figures:
        figures = Path(args.figures)
        figures.mkdir(parents=True, exist_ok=True)
        reporting.render_kind_counts(stats, figures / "kb_stats.png")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="facetkb",
        description="Faceted commonsense knowledge base builder")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_discover(sub)
    _add_extract(sub)
    _add_type_facets(sub)
    _add_expand(sub)
    _add_consolidate(sub)
    _add_pipeline(sub)
    _add_query(sub)
    _add_stats(sub)
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
