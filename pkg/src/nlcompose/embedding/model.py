"""Word-vector models and sentence embedding by mean pooling.

A sentence embeds to the arithmetic mean of its known token vectors; a
sentence with no known tokens embeds to the zero vector so that one unknown
description can never break matching (cosine against anything is 0).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from nlcompose.errors import (
    DimensionError,
    DimensionMismatch,
    EmptyInput,
    FormatError,
)

_TOKEN_SPLIT = re.compile(r"[^a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric runs; no stemming, no stop words."""
    return [t for t in _TOKEN_SPLIT.split(text.lower()) if t]


@dataclass(frozen=True)
class EmbeddingVector:
    values: np.ndarray
    known_token_count: int

    @property
    def dimension(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True)
class EmbeddingModel:
    dimension: int
    vocab: dict[str, np.ndarray]
    name: str = "word-average"

    def __contains__(self, token: str) -> bool:
        return token in self.vocab


def load_word_vectors(source: IO[str] | Iterable[str], name: str = "word-average") -> EmbeddingModel:
    """Read a word-vector stream: one `token v1 v2 ... vd` row per line.

    An optional header line holding exactly two integers (count and
    dimension) is skipped; when present its dimension is enforced. Duplicate
    tokens keep the last row.
    """
    dimension: int | None = None
    vocab: dict[str, np.ndarray] = {}
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if lineno == 1 and len(parts) == 2 and _is_int(parts[0]) and _is_int(parts[1]):
            dimension = int(parts[1])
            if dimension <= 0:
                raise DimensionError(f"header declares non-positive dimension {dimension}")
            continue
        if len(parts) < 2:
            raise FormatError(f"line {lineno}: expected 'token v1 ... vd'")
        token = parts[0]
        try:
            values = np.array([float(v) for v in parts[1:]], dtype=np.float64)
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if dimension is None:
            dimension = values.shape[0]
        elif values.shape[0] != dimension:
            raise DimensionError(
                f"line {lineno}: row has {values.shape[0]} values, expected {dimension}"
            )
        vocab[token] = values
    if not vocab:
        raise FormatError("word-vector stream holds no rows")
    assert dimension is not None
    return EmbeddingModel(dimension=int(dimension), vocab=vocab, name=name)


def _is_int(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def embed_sentence(model: EmbeddingModel, text: str) -> EmbeddingVector:
    """Mean of the vectors of known tokens; zero vector when all are unknown.

    Raises EmptyInput when the text tokenizes to nothing at all.
    """
    tokens = tokenize(text)
    if not tokens:
        raise EmptyInput(f"no tokens in {text!r}")
    known = [model.vocab[t] for t in tokens if t in model.vocab]
    if not known:
        return EmbeddingVector(np.zeros(model.dimension, dtype=np.float64), 0)
    mean = np.mean(np.stack(known), axis=0)
    return EmbeddingVector(mean, len(known))


def cosine_similarity(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Standard cosine; 0 when either vector has zero norm."""
    if a.dimension != b.dimension:
        raise DimensionMismatch(f"{a.dimension} vs {b.dimension}")
    na = float(np.linalg.norm(a.values))
    nb = float(np.linalg.norm(b.values))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a.values, b.values) / (na * nb))
