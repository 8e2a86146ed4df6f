"""Static synonym table mapping entity kinds to ranked nouns, with an
optional embedding-similarity fallback when the table misses."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from nlcompose.entities.lexicon import _read_data_lines
from nlcompose.entities.types import EntityKind


@dataclass(frozen=True)
class SynonymTable:
    by_kind: dict[str, tuple[str, ...]]

    def __post_init__(self):
        for kind, nouns in self.by_kind.items():
            if not nouns:
                raise ValueError(f"synonym list for {kind} is empty")

    def synonyms(self, kind: EntityKind | str) -> tuple[str, ...]:
        return self.by_kind.get(str(kind), ())

    @classmethod
    def parse(cls, text: str) -> "SynonymTable":
        """Parse `KIND: noun1, noun2, ...` lines (# comments allowed)."""
        table: dict[str, tuple[str, ...]] = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            kind, _, rest = line.partition(":")
            nouns = tuple(n.strip().lower() for n in rest.split(",") if n.strip())
            table[kind.strip().upper()] = nouns
        return cls(table)


@lru_cache(maxsize=1)
def default_synonym_table() -> SynonymTable:
    lines = _read_data_lines("synonyms.txt")
    return SynonymTable.parse("\n".join(lines))


@dataclass
class SynonymMatcher:
    """Matches an entity kind against argument-description nouns.

    Primary route is the static table; when a model is supplied and the table
    misses, the kind label's embedding is compared against each noun and the
    closest noun above the cutoff counts as a match.
    """

    table: SynonymTable = field(default_factory=default_synonym_table)
    model: object | None = None  # EmbeddingModel, kept untyped to avoid a hard import
    embedding_cutoff: float = 0.55

    def match(self, kind: EntityKind, arg_nouns: list[str]) -> str | None:
        """Best synonym of `kind` present in arg_nouns, or None."""
        noun_set = set(arg_nouns)
        for synonym in self.table.synonyms(kind):
            if synonym in noun_set:
                return synonym
        if self.model is not None and arg_nouns:
            return self._embedding_match(kind, arg_nouns)
        return None

    def _embedding_match(self, kind: EntityKind, arg_nouns: list[str]) -> str | None:
        from nlcompose.embedding.model import cosine_similarity, embed_sentence
        from nlcompose.errors import EmptyInput

        try:
            kind_vec = embed_sentence(self.model, str(kind).lower())
        except EmptyInput:
            return None
        best: tuple[float, str] | None = None
        for noun in arg_nouns:
            try:
                noun_vec = embed_sentence(self.model, noun)
            except EmptyInput:
                continue
            score = cosine_similarity(kind_vec, noun_vec)
            if score >= self.embedding_cutoff and (best is None or score > best[0]):
                best = (score, noun)
        return best[1] if best else None
