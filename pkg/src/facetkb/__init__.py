"""facetkb: faceted commonsense knowledge base builder."""

from .embeddings import (EmbeddingFormatError, EmbeddingTable,
                         cosine_similarity, load_embeddings, phrase_vector)
from .model import (Facet, FacetedAssertion, FacetKey, KbFormatError,
                    KnowledgeBase, SubjectEntry, SubjectKind, load_kb, save_kb)

__version__ = "0.1.0"

__all__ = [
    "EmbeddingFormatError",
    "EmbeddingTable",
    "Facet",
    "FacetedAssertion",
    "FacetKey",
    "KbFormatError",
    "KnowledgeBase",
    "SubjectEntry",
    "SubjectKind",
    "cosine_similarity",
    "load_embeddings",
    "load_kb",
    "phrase_vector",
    "save_kb",
    "__version__",
]
