"""adapter CLI: convert raw text or HTML into the parsed-corpus JSON lines."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from urllib.parse import urlparse
from urllib.request import urlopen

from .convert import convert_text, document_to_json
from .scrape import scrape


def _read_source(location: str) -> str:
    parsed = urlparse(location)
    if parsed.scheme in {"http", "https", "file"}:
        with urlopen(location, timeout=30) as response:
            return response.read().decode("utf-8", errors="replace")
    return Path(location).read_text(encoding="utf-8", errors="replace")


def _slug(location: str) -> str:
    parsed = urlparse(location)
    stem = Path(parsed.path or location).stem
    return stem or "page"


def _gather(args) -> list[tuple[str, str]]:
    """(doc id, raw text) pairs from the input directory and/or URL list."""
    documents: list[tuple[str, str]] = []
    if args.indir:
        root = Path(args.indir)
        for path in sorted(root.glob("*.txt")):
            documents.append((path.stem, path.read_text(encoding="utf-8")))
        for path in sorted(root.glob("*.html")):
            page = scrape(path.read_text(encoding="utf-8", errors="replace"))
            if not page.text.strip():
                print(f"skipping {path.name}: no main content", file=sys.stderr)
                continue
            documents.append((path.stem, page.text))
    if args.scrape:
        for line in Path(args.scrape).read_text(encoding="utf-8").splitlines():
            location = line.strip()
            if not location or location.startswith("#"):
                continue
            try:
                source = _read_source(location)
            except OSError as exc:
                print(f"skipping {location}: {exc}", file=sys.stderr)
                continue
            page = scrape(source)
            if not page.text.strip():
                print(f"skipping {location}: no main content", file=sys.stderr)
                continue
            documents.append((_slug(location), page.text))
    return documents


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="adapter",
        description="Convert raw text or HTML into the parsed-corpus "
                    "JSON-lines format")
    parser.add_argument("--in", dest="indir",
                        help="directory of *.txt / *.html documents")
    parser.add_argument("--out", required=True, help="output JSONL path")
    parser.add_argument("--coref", action="store_true",
                        help="emit paragraph-local pronoun coreference chains")
    parser.add_argument("--scrape", help="file listing URLs or HTML paths")
    args = parser.parse_args(argv)
    if not args.indir and not args.scrape:
        parser.error("need --in and/or --scrape")

    documents = _gather(args)
    written = 0
    with open(args.out, "w", encoding="utf-8") as fh:
        for doc_id, text in documents:
            if not text.strip():
                print(f"skipping {doc_id}: empty body", file=sys.stderr)
                continue
            converted = convert_text(doc_id, text, enable_coref=args.coref)
            fh.write(json.dumps(document_to_json(converted),
                                ensure_ascii=False) + "\n")
            written += 1
    print(f"wrote {written} documents -> {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
