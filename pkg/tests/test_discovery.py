from __future__ import annotations

import json
import math
import random
import re
import threading
from collections import Counter
from http.server import BaseHTTPRequestHandler, HTTPServer

import pytest

from facetkb.discovery import (FilterConfig, HttpFetcher, OfflineCorpusFetcher,
                               QueryTemplate, RawDocument, bag_of_words,
                               build_query, filter_documents, load_templates,
                               reference_similarity, select_reference)

NO_STOP = frozenset()


def doc(doc_id, body, url="https://example.org/page"):
    return RawDocument(id=doc_id, url=url, title=doc_id, body=body)


def words(prefix, n):
    return " ".join(f"{prefix}{i}" for i in range(n))


def test_build_query_walks_to_animal_template(lexicon, templates_path):
    templates = load_templates(templates_path)
    assert build_query("lynx", lexicon, templates) == "lynx animal facts"


def test_build_query_professional_template(lexicon, templates_path):
    templates = load_templates(templates_path)
    assert build_query("teacher", lexicon, templates) == "teacher job descriptions"


def test_build_query_direct_hypernym_fallback(lexicon, templates_path):
    templates = load_templates(templates_path)
    assert build_query("widget", lexicon, templates) == "widget (artifact)"


def test_build_query_unknown_concept_degenerates(lexicon, templates_path):
    templates = load_templates(templates_path)
    assert build_query("zzyzx", lexicon, templates) == "zzyzx"


def test_template_pattern_validated():
    with pytest.raises(ValueError):
        QueryTemplate("animal.n.01", "no placeholder")
    with pytest.raises(ValueError):
        QueryTemplate("animal.n.01", "{s} and {s}")


def test_bag_of_words_rules():
    assert bag_of_words("The cat sat.", frozenset({"the"})) == Counter(
        {"cat": 1, "sat": 1})
    assert bag_of_words("", NO_STOP) == Counter()


def test_bag_of_words_matches_independent_tokenizer():
    text = ("Lynx hunt snowshoe hares at night; lynx rarely roam far.\n"
            "Thick fur keeps the lynx warm -- fur matters!")
    # Independent oracle: a different tokenization route.
    expected = Counter(
        w for w in re.sub(r"[^a-z0-9\s]", " ", text.lower()).split())
    assert bag_of_words(text, NO_STOP) == expected


def test_reference_similarity_identity_and_disjoint():
    a = doc("a", "lynx hunt hares")
    assert reference_similarity(a, a, NO_STOP) == pytest.approx(1.0)
    b = doc("b", "quantum computing qubits")
    assert reference_similarity(a, b, NO_STOP) == 0.0


def test_reference_similarity_symmetric_and_bounded():
    rng = random.Random(21)
    for _ in range(30):
        left = doc("l", words("w", rng.randint(1, 20)) + " "
                   + words("l", rng.randint(0, 10)))
        right = doc("r", words("w", rng.randint(1, 20)) + " "
                    + words("r", rng.randint(0, 10)))
        one = reference_similarity(left, right, NO_STOP)
        other = reference_similarity(right, left, NO_STOP)
        assert one == pytest.approx(other)
        assert 0.0 <= one <= 1.0 + 1e-12


def test_filter_config_validation():
    with pytest.raises(ValueError):
        FilterConfig(rho=1.5)
    with pytest.raises(ValueError):
        FilterConfig(max_documents=0)


def test_reference_similarity_hand_computed():
    # counts {a:1, b:2} vs {a:1, b:1, c:1}: 3 / (sqrt(5) * sqrt(3))
    left = doc("l", "a b b")
    right = doc("r", "a b c")
    assert reference_similarity(left, right, NO_STOP) == pytest.approx(
        3 / math.sqrt(15), abs=1e-12)
    assert reference_similarity(left, right, NO_STOP) == pytest.approx(
        0.7745966692414834)


def similarity_fixture(shared, extra_ref, extra_doc):
    """Two documents of distinct words with cosine = shared/sqrt(total1*total2)."""
    common = words("c", shared)
    ref = doc("ref", common + " " + words("r", extra_ref))
    other = doc("doc", common + " " + words("d", extra_doc))
    return other, ref


def test_filter_keeps_similarity_056_drops_054():
    cfg = FilterConfig(rho=0.45, stopwords=NO_STOP)
    # cos = 14/25 = 0.56 -> distance 0.44 <= 0.45
    kept, ref = similarity_fixture(14, 11, 11)
    assert reference_similarity(kept, ref, NO_STOP) == pytest.approx(0.56)
    assert filter_documents([kept], ref, cfg).retained == [kept]
    # cos = 27/50 = 0.54 -> distance 0.46 > 0.45
    dropped, ref = similarity_fixture(27, 23, 23)
    assert reference_similarity(dropped, ref, NO_STOP) == pytest.approx(0.54)
    assert filter_documents([dropped], ref, cfg).retained == []


def test_filter_boundary_is_inclusive():
    # cos = 11/20 = 0.55 exactly -> distance 0.45 <= rho, retained
    boundary, ref = similarity_fixture(11, 9, 9)
    assert reference_similarity(boundary, ref, NO_STOP) == 0.55
    cfg = FilterConfig(rho=0.45, stopwords=NO_STOP)
    result = filter_documents([boundary], ref, cfg)
    assert result.retained == [boundary]
    assert result.report[0].retained


def test_filter_identity_retained_disjoint_dropped():
    ref = doc("ref", words("w", 30))
    same = doc("same", words("w", 30))
    junk = doc("junk", words("z", 30))
    cfg = FilterConfig(rho=0.45, stopwords=NO_STOP)
    result = filter_documents([same, junk], ref, cfg)
    assert result.retained == [same]
    assert [s.retained for s in result.report] == [True, False]


def test_filter_without_reference_retains_all_with_warning():
    docs = [doc("a", "x y z"), doc("b", "p q r")]
    result = filter_documents(docs, None, FilterConfig(stopwords=NO_STOP))
    assert result.retained == docs
    assert result.no_reference
    assert all(s.no_reference for s in result.report)


def test_filter_preserves_fetcher_order():
    rng = random.Random(3)
    ref = doc("ref", words("w", 40))
    docs = []
    for i in range(20):
        shared = rng.randint(10, 40)
        body = words("w", shared) + " " + words(f"x{i}_", 40 - shared)
        docs.append(doc(f"d{i:02d}", body))
    result = filter_documents(docs, ref, FilterConfig(rho=0.3, stopwords=NO_STOP))
    ids = [d.id for d in result.retained]
    assert ids == [d.id for d in docs if d.id in set(ids)]


def test_filter_monotone_in_rho():
    rng = random.Random(5)
    ref = doc("ref", words("w", 40))
    docs = []
    for i in range(30):
        shared = rng.randint(0, 40)
        body = words("w", shared) + " " + words(f"x{i}_", 40 - shared)
        docs.append(doc(f"d{i}", body))
    previous: set[str] = set()
    for rho in [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]:
        cfg = FilterConfig(rho=rho, stopwords=NO_STOP)
        retained = {d.id for d in filter_documents(docs, ref, cfg).retained}
        assert previous <= retained
        previous = retained


def test_select_reference_by_pairing(lexicon):
    docs = [doc("a", "x"), doc("b", "y")]
    pairings = {"lynx.n.02": "b"}
    assert select_reference("lynx", lexicon, docs, pairings).id == "b"


def test_select_reference_first_encyclopedia_host(lexicon):
    docs = [doc("a", "x", url="https://blog.example.org/lynx"),
            doc("b", "y", url="https://en.wikipedia.org/wiki/Lynx"),
            doc("c", "z", url="https://de.wikipedia.org/wiki/Luchs")]
    assert select_reference("lynx", lexicon, docs, None).id == "b"


def test_select_reference_absent(lexicon):
    docs = [doc("a", "x", url="https://blog.example.org/lynx")]
    assert select_reference("lynx", lexicon, docs, None) is None


def test_offline_fetcher_reads_rank_order(tmp_path):
    (tmp_path / "b.txt").write_text("body b", encoding="utf-8")
    (tmp_path / "b.meta.json").write_text(
        json.dumps({"title": "B", "url": "https://x/b", "rank": 1}))
    (tmp_path / "a.txt").write_text("body a", encoding="utf-8")
    (tmp_path / "a.meta.json").write_text(
        json.dumps({"title": "A", "url": "https://x/a", "rank": 2}))
    (tmp_path / "empty.txt").write_text("   ", encoding="utf-8")
    fetcher = OfflineCorpusFetcher(tmp_path)
    docs = fetcher.fetch("ignored", 10)
    assert [d.id for d in docs] == ["b", "a"]
    assert docs[0].title == "B"
    assert fetcher.fetch("ignored", 1) == docs[:1]


class _Handler(BaseHTTPRequestHandler):
    payload = [
        {"id": "h1", "url": "https://x/1", "title": "One", "body": "text one"},
        {"id": "h2", "url": "https://x/2", "title": "Two", "body": ""},
    ]

    def do_GET(self):
        data = json.dumps(self.payload).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):
        pass


def test_http_fetcher_against_local_server():
    server = HTTPServer(("127.0.0.1", 0), _Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        port = server.server_address[1]
        fetcher = HttpFetcher(f"http://127.0.0.1:{port}/search")
        docs = fetcher.fetch("lynx animal facts", 10)
        # the empty-body result is skipped
        assert [d.id for d in docs] == ["h1"]
        assert docs[0].title == "One"
    finally:
        server.shutdown()
