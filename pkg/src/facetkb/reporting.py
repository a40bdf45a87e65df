"""Figure rendering and delimited stats output for the report path."""
from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def write_stats_tsv(stats: Mapping[str, Mapping[str, int]], path: str | Path) -> None:
    lines = ["kind\tsubjects\tassertions\tfacets"]
    for kind in ("primary", "subgroup", "aspect", "all"):
        row = stats[kind]
        lines.append(f"{kind}\t{row['subjects']}\t{row['assertions']}\t{row['facets']}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def render_similarity_histogram(similarities: Sequence[float], rho: float,
                                path: str | Path) -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, 4))
    if similarities:
        distances = [1.0 - s for s in similarities]
        ax.hist(distances, bins=20, range=(0.0, 1.0), color="#4878a8",
                edgecolor="white")
    ax.axvline(rho, color="#b03030", linestyle="--", label=f"threshold {rho}")
    ax.set_xlabel("cosine distance to reference")
    ax.set_ylabel("documents")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_retention(labels: Sequence[str], rates: Sequence[float],
                     path: str | Path) -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * len(labels) + 2), 4))
    ax.bar(range(len(labels)), rates, color="#4878a8")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("document retention rate")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_kind_counts(stats: Mapping[str, Mapping[str, int]],
                       path: str | Path) -> None:
    plt = _plt()
    kinds = ("primary", "subgroup", "aspect")
    fields = ("subjects", "assertions", "facets")
    fig, ax = plt.subplots(figsize=(6, 4))
    width = 0.25
    for offset, field in enumerate(fields):
        xs = [i + (offset - 1) * width for i in range(len(kinds))]
        ax.bar(xs, [stats[k][field] for k in kinds], width=width, label=field)
    ax.set_xticks(range(len(kinds)))
    ax.set_xticklabels(kinds)
    ax.set_yscale("symlog")
    ax.set_ylabel("count")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
