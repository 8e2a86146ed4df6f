"""Embedded description corpus and nearest-neighbor ranking."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from nlcompose.embedding import kernels
from nlcompose.embedding.model import EmbeddingModel, EmbeddingVector, embed_sentence
from nlcompose.errors import EmptyIndex, EmptyInput
from nlcompose.matching import MatchCandidate
from nlcompose.registry.store import CorpusEntry

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IndexedEntry:
    sentence: str
    service_id: str
    method_id: str
    embedding: EmbeddingVector


@dataclass(frozen=True)
class EmbeddedCorpus:
    model_name: str
    entries: tuple[IndexedEntry, ...]
    registry_version: int
    # Packed row-major copy of all embeddings, kept alongside the entries so
    # ranking can run through the similarity kernel without re-stacking.
    matrix: np.ndarray
    row_norms: np.ndarray

    def __len__(self) -> int:
        return len(self.entries)


def index_corpus(
    model: EmbeddingModel,
    corpus: list[CorpusEntry],
    registry_version: int = 0,
) -> EmbeddedCorpus:
    """Embed every corpus sentence, preserving order.

    Sentences that tokenize to nothing are skipped with a diagnostic; fully
    out-of-vocabulary sentences stay in the index with a zero vector (and a
    diagnostic), so they simply never win a ranking.
    """
    entries: list[IndexedEntry] = []
    for sentence, service_id, method_id in corpus:
        try:
            embedding = embed_sentence(model, sentence)
        except EmptyInput:
            log.warning(
                "skipping unembeddable capability %r of %s.%s", sentence, service_id, method_id
            )
            continue
        if embedding.known_token_count == 0:
            log.warning(
                "capability %r of %s.%s shares no vocabulary with the model",
                sentence,
                service_id,
                method_id,
            )
        entries.append(IndexedEntry(sentence, service_id, method_id, embedding))

    if entries:
        matrix = np.ascontiguousarray(
            np.stack([e.embedding.values for e in entries]), dtype=np.float64
        )
    else:
        matrix = np.zeros((0, model.dimension), dtype=np.float64)
    row_norms = np.linalg.norm(matrix, axis=1) if len(entries) else np.zeros(0)
    return EmbeddedCorpus(
        model_name=model.name,
        entries=tuple(entries),
        registry_version=registry_version,
        matrix=matrix,
        row_norms=np.ascontiguousarray(row_norms, dtype=np.float64),
    )


def rank_candidates(index: EmbeddedCorpus, request: EmbeddingVector) -> list[MatchCandidate]:
    """Rank methods by best-capability cosine similarity to the request.

    Every entry is scored; scores collapse to one candidate per
    (service_id, method_id) keeping the maximum across that method's
    capabilities. Output is sorted descending, ties broken by
    (service_id, method_id).
    """
    if not index.entries:
        raise EmptyIndex("corpus index is empty")
    query = np.ascontiguousarray(request.values, dtype=np.float64)
    scores = kernels.cosine_scores(index.matrix, index.row_norms, query)

    best: dict[tuple[str, str], float] = {}
    for entry, score in zip(index.entries, scores):
        key = (entry.service_id, entry.method_id)
        previous = best.get(key)
        if previous is None or score > previous:
            best[key] = float(score)

    candidates = [
        MatchCandidate(service_id=sid, method_id=mid, similarity=sim)
        for (sid, mid), sim in best.items()
    ]
    candidates.sort(key=lambda c: (-c.similarity, c.service_id, c.method_id))
    return candidates
