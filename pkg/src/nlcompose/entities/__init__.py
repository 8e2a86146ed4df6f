"""Entity recognition, noun extraction, synonyms, and argument binding."""

from nlcompose.entities.binding import (
    SOURCE_ENTITY,
    SOURCE_USER,
    SOURCE_WM,
    ArgBinding,
    BoundArg,
    bind_arguments,
    wm_lookup,
)
from nlcompose.entities.lexicon import default_noun_lexicon, extract_nouns
from nlcompose.entities.recognize import (
    EntityRecognizer,
    format_money,
    recognize_entities,
)
from nlcompose.entities.synonyms import SynonymMatcher, SynonymTable, default_synonym_table
from nlcompose.entities.types import Entity, EntityKind

__all__ = [
    "ArgBinding",
    "BoundArg",
    "Entity",
    "EntityKind",
    "EntityRecognizer",
    "SOURCE_ENTITY",
    "SOURCE_USER",
    "SOURCE_WM",
    "SynonymMatcher",
    "SynonymTable",
    "bind_arguments",
    "default_noun_lexicon",
    "default_synonym_table",
    "extract_nouns",
    "format_money",
    "recognize_entities",
    "wm_lookup",
]
