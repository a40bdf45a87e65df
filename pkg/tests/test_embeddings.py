from __future__ import annotations

import math
import random

import numpy as np
import pytest

from facetkb.embeddings import (EmbeddingFormatError, EmbeddingTable,
                                cosine_similarity, load_embeddings,
                                phrase_vector)


def write(tmp_path, text):
    path = tmp_path / "emb.txt"
    path.write_text(text, encoding="utf-8")
    return path


def test_load_direct_readback(tmp_path):
    table = load_embeddings(write(tmp_path, "2 3\na 1 0 0\nb 0 1 0\n"))
    assert table.dimension == 3
    assert len(table) == 2
    assert list(table.vector("a")) == [1.0, 0.0, 0.0]


def test_dimension_mismatch_reports_line(tmp_path):
    path = write(tmp_path, "3 3\na 1 0 0\nb 0 1 0\nc 1 2\n")
    with pytest.raises(EmbeddingFormatError) as err:
        load_embeddings(path)
    assert err.value.line == 4


def test_empty_file_rejected(tmp_path):
    with pytest.raises(EmbeddingFormatError):
        load_embeddings(write(tmp_path, ""))


def test_count_mismatch_rejected(tmp_path):
    with pytest.raises(EmbeddingFormatError):
        load_embeddings(write(tmp_path, "3 3\na 1 0 0\nb 0 1 0\n"))


def test_lookup_is_case_insensitive(tmp_path):
    table = load_embeddings(write(tmp_path, "1 3\na 1 0 0\n"))
    assert list(table.vector("A")) == [1.0, 0.0, 0.0]
    assert "A" in table


def test_table_constructor_validates_lengths():
    with pytest.raises(ValueError):
        EmbeddingTable(3, {"a": [1, 0]})
    with pytest.raises(ValueError):
        EmbeddingTable(0, {})


def test_phrase_vector_single_token():
    table = EmbeddingTable(3, {"a": [1, 0, 0]})
    assert list(phrase_vector("a", table)) == [1.0, 0.0, 0.0]


def test_phrase_vector_mean_of_two():
    table = EmbeddingTable(3, {"a": [1, 0, 0], "b": [0, 1, 0]})
    assert list(phrase_vector("a b", table)) == [0.5, 0.5, 0.0]


def test_phrase_vector_oov_absent():
    table = EmbeddingTable(3, {"a": [1, 0, 0]})
    assert phrase_vector("zzz", table) is None


def test_phrase_vector_order_insensitive():
    table = EmbeddingTable(3, {"x": [1, 2, 3], "y": [0, 1, 0], "z": [4, 0, 1]})
    assert np.allclose(phrase_vector("x y z", table), phrase_vector("z y x", table))


def test_cosine_identity_and_orthogonal():
    assert cosine_similarity([1, 2, 3], [1, 2, 3]) == pytest.approx(1.0)
    assert cosine_similarity([1, 0], [0, 1]) == pytest.approx(0.0)


def test_cosine_hand_computed_value():
    # dot([1,2],[1,1]) / (|[1,2]|*|[1,1]|) = 3 / sqrt(10)
    assert cosine_similarity([1, 2], [1, 1]) == pytest.approx(
        3 / math.sqrt(10), abs=1e-12)
    assert cosine_similarity([1, 2], [1, 1]) == pytest.approx(0.9486832980505138)


def test_cosine_zero_vector_rejected():
    with pytest.raises(ValueError):
        cosine_similarity([0, 0], [1, 1])


def test_cosine_length_mismatch_rejected():
    with pytest.raises(ValueError):
        cosine_similarity([1, 0], [1, 0, 0])


def test_cosine_symmetric_and_scale_invariant():
    rng = random.Random(11)
    for _ in range(50):
        u = [rng.uniform(-2, 2) for _ in range(5)]
        v = [rng.uniform(-2, 2) for _ in range(5)]
        if not any(u) or not any(v):
            continue
        alpha = rng.uniform(0.1, 10.0)
        assert cosine_similarity(u, v) == pytest.approx(cosine_similarity(v, u))
        assert cosine_similarity([alpha * x for x in u], v) == pytest.approx(
            cosine_similarity(u, v))
        assert -1.0 - 1e-12 <= cosine_similarity(u, v) <= 1.0 + 1e-12
