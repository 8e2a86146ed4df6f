"""Sentence embeddings by word-vector averaging, plus the corpus index."""

from nlcompose.embedding.index import EmbeddedCorpus, IndexedEntry, index_corpus, rank_candidates
from nlcompose.embedding.kernels import active_kernel, available_kernels
from nlcompose.embedding.model import (
    EmbeddingModel,
    EmbeddingVector,
    cosine_similarity,
    embed_sentence,
    load_word_vectors,
    tokenize,
)

__all__ = [
    "EmbeddedCorpus",
    "EmbeddingModel",
    "EmbeddingVector",
    "IndexedEntry",
    "active_kernel",
    "available_kernels",
    "cosine_similarity",
    "embed_sentence",
    "index_corpus",
    "load_word_vectors",
    "rank_candidates",
    "tokenize",
]
