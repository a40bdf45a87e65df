"""Newline-delimited JSON protocol to out-of-process scorers.

A scorer is any executable that reads one JSON object per line on stdin and
answers one JSON object per line on stdout, echoing the request ``id``. The
protocol is the language-neutral boundary to neural runtimes; this package
ships no neural code.
"""
from __future__ import annotations

import json
import os
import select
import shlex
import subprocess
from typing import Sequence

import numpy as np

from .embeddings import EmbeddingTable, cosine_similarity, phrase_vector


class ScorerProtocolError(RuntimeError):
    """The scorer process violated the line protocol."""


class ScorerTimeout(ScorerProtocolError):
    """The scorer did not answer before the deadline."""


class LineScorer:
    """Manages one scorer subprocess and batched request/response rounds.

    Responses may arrive out of order; they are matched back by ``id``.
    Per-batch output order follows request order.
    """

    def __init__(self, command: str | Sequence[str], timeout: float = 60.0):
        self.command = shlex.split(command) if isinstance(command, str) else list(command)
        self.timeout = timeout
        self._proc: subprocess.Popen | None = None
        self._buffer = b""

    def __enter__(self) -> "LineScorer":
        self.start()
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def start(self) -> None:
        if self._proc is None:
            self._proc = subprocess.Popen(
                self.command, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                text=False)

    def close(self) -> None:
        if self._proc is not None:
            try:
                self._proc.stdin.close()
            except OSError:
                pass
            self._proc.terminate()
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()
                self._proc.wait(timeout=5)
            self._proc = None
        self._buffer = b""

    def _read_line(self, deadline: float) -> bytes:
        import time

        assert self._proc is not None
        stdout = self._proc.stdout
        while b"\n" not in self._buffer:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise ScorerTimeout(f"scorer {self.command[0]} timed out")
            ready, _, _ = select.select([stdout], [], [], remaining)
            if not ready:
                raise ScorerTimeout(f"scorer {self.command[0]} timed out")
            chunk = os.read(stdout.fileno(), 65536)
            if not chunk:
                raise ScorerProtocolError(
                    f"scorer {self.command[0]} closed its output stream")
            self._buffer += chunk
        line, _, self._buffer = self._buffer.partition(b"\n")
        return line

    def request_many(self, payloads: Sequence[dict]) -> list[dict]:
        """Send every payload, then collect one response per request id."""
        import time

        self.start()
        assert self._proc is not None
        data = "".join(json.dumps(p) + "\n" for p in payloads).encode("utf-8")
        try:
            self._proc.stdin.write(data)
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise ScorerProtocolError(f"scorer {self.command[0]} is gone: {exc}") from exc
        deadline = time.monotonic() + self.timeout
        expected = {p["id"] for p in payloads}
        responses: dict[object, dict] = {}
        while len(responses) < len(payloads):
            line = self._read_line(deadline)
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ScorerProtocolError(
                    f"scorer sent invalid JSON: {line[:200]!r}") from exc
            if "id" not in obj or obj["id"] not in expected:
                raise ScorerProtocolError(f"scorer answered unknown id: {obj!r}")
            if obj["id"] in responses:
                raise ScorerProtocolError(f"scorer answered id {obj['id']!r} twice")
            responses[obj["id"]] = obj
        return [responses[p["id"]] for p in payloads]


class ExternalPairScorer:
    """Assertion-pair similarity through the line protocol:
    {id, p1, o1, p2, o2} -> {id, similarity in [0, 1]}."""

    def __init__(self, scorer: LineScorer):
        self.scorer = scorer

    def score_pairs(self, pairs: Sequence[tuple[str, str, str, str]]) -> list[float]:
        payloads = [
            {"id": index, "p1": p1, "o1": o1, "p2": p2, "o2": o2}
            for index, (p1, o1, p2, o2) in enumerate(pairs)
        ]
        out = []
        for response in self.scorer.request_many(payloads):
            try:
                similarity = float(response["similarity"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ScorerProtocolError(
                    f"pair scorer answered without a similarity: {response!r}") from exc
            if not 0.0 <= similarity <= 1.0:
                raise ScorerProtocolError(
                    f"similarity {similarity} outside [0, 1]")
            out.append(similarity)
        return out


class EmbeddingPairScorer:
    """Deterministic fallback scorer: cosine of mean word vectors of the
    predicate+object texts, clamped to [0, 1]. Identical texts score 1.0
    even when out of vocabulary."""

    def __init__(self, table: EmbeddingTable):
        self.table = table

    def score_pairs(self, pairs: Sequence[tuple[str, str, str, str]]) -> list[float]:
        out = []
        for p1, o1, p2, o2 in pairs:
            left = f"{p1} {o1}".strip()
            right = f"{p2} {o2}".strip()
            if left == right:
                out.append(1.0)
                continue
            u = phrase_vector(left, self.table)
            v = phrase_vector(right, self.table)
            if u is None or v is None or not np.any(u) or not np.any(v):
                out.append(0.0)
                continue
            out.append(max(0.0, min(1.0, cosine_similarity(u, v))))
        return out
