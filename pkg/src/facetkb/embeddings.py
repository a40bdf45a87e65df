"""Word-embedding table: loading, phrase vectors and cosine similarity.

The table is immutable after load and shared read-only; all operations here
are pure.
"""
from __future__ import annotations

from pathlib import Path
from typing import Mapping

import numpy as np

from .textutil import tokenize


class EmbeddingFormatError(ValueError):
    """An embedding file does not match the word2vec text format."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmbeddingTable:
    """token -> dense vector map; lookups are case-insensitive."""

    def __init__(self, dimension: int, entries: Mapping[str, np.ndarray]):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        store: dict[str, np.ndarray] = {}
        for token, vec in entries.items():
            arr = np.asarray(vec, dtype=np.float64)
            if arr.shape != (dimension,):
                raise ValueError(f"vector for {token!r} has length {arr.shape}, "
                                 f"expected {dimension}")
            arr.setflags(write=False)
            store[token.lower()] = arr
        self.dimension = dimension
        self._entries = store

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self._entries

    def vector(self, token: str) -> np.ndarray | None:
        return self._entries.get(token.lower())


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Read word2vec text format: a "count dimension" header, then one
    "token v1 ... vD" line per entry."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].strip():
        raise EmbeddingFormatError("empty embedding file")
    head = lines[0].split()
    if len(head) != 2:
        raise EmbeddingFormatError("header must be 'count dimension'", line=1)
    try:
        count, dimension = int(head[0]), int(head[1])
    except ValueError:
        raise EmbeddingFormatError("header must be 'count dimension'", line=1) from None
    if count < 0 or dimension < 1:
        raise EmbeddingFormatError("bad count/dimension in header", line=1)
    entries: dict[str, np.ndarray] = {}
    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        token, values = parts[0], parts[1:]
        if len(values) != dimension:
            raise EmbeddingFormatError(
                f"expected {dimension} values for {token!r}, got {len(values)}",
                line=number)
        try:
            entries[token.lower()] = np.array([float(v) for v in values])
        except ValueError:
            raise EmbeddingFormatError(f"non-numeric value for {token!r}",
                                       line=number) from None
    if len(entries) != count:
        raise EmbeddingFormatError(
            f"header announced {count} entries, file provides {len(entries)}")
    return EmbeddingTable(dimension, entries)


def phrase_vector(phrase: str, table: EmbeddingTable) -> np.ndarray | None:
    """Mean vector of in-vocabulary tokens; None when every token is OOV.

    OOV tokens are skipped rather than zero-filled: zero vectors poison
    cosine similarity.
    """
    vectors = [v for v in (table.vector(t) for t in tokenize(phrase)) if v is not None]
    if not vectors:
        return None
    return np.mean(vectors, axis=0)


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.shape} vs {v.shape}")
    nu = float(np.dot(u, u))
    nv = float(np.dot(v, v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine similarity undefined for zero vectors")
    return float(np.dot(u, v) / np.sqrt(nu * nv))
