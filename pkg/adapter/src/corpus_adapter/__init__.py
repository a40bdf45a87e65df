"""corpus_adapter: raw text/HTML to parsed-corpus JSON lines."""

__version__ = "0.1.0"
