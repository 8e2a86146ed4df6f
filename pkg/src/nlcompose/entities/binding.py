"""Argument binding: working memory first, then declared kinds, then synonyms.

Mirrors the conversational disambiguation flow: values the session already
holds are never asked for again; recognized entities fill what they can
(consumed at most once, in sentence order); whatever is left is handed back
as unresolved so the engine can ask the user.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from nlcompose.composition.wm import WorkingMemory
from nlcompose.entities.lexicon import extract_nouns
from nlcompose.entities.synonyms import SynonymMatcher
from nlcompose.entities.types import Entity, EntityKind
from nlcompose.registry.descriptors import ArgDescriptor, MethodDescriptor

SOURCE_WM = "WM"
SOURCE_ENTITY = "ENTITY"
SOURCE_USER = "USER"


@dataclass(frozen=True)
class BoundArg:
    value: Any
    source: str  # SOURCE_WM | SOURCE_ENTITY | SOURCE_USER


@dataclass(frozen=True)
class ArgBinding:
    bound: dict[str, BoundArg]
    unresolved: tuple[str, ...]

    def complete(self) -> bool:
        return not self.unresolved


def wm_lookup(wm: WorkingMemory, arg_name: str) -> tuple[str, Any] | None:
    """Find a working-memory value for an argument name.

    The exact key wins; otherwise dotted keys ending in `.arg_name` (the
    `<service>.<method>.<arg>` convention, or paper-style `flight.from`)
    match, lexicographically smallest first.
    """
    if wm.has(arg_name):
        return arg_name, wm.get(arg_name)
    suffix = f".{arg_name}"
    for key in wm.keys():
        if key.endswith(suffix):
            return key, wm.get(key)
    return None


def bind_arguments(
    method: MethodDescriptor,
    entities: list[Entity],
    wm: WorkingMemory,
    synonyms: SynonymMatcher | None = None,
    noun_lexicon: frozenset[str] | None = None,
) -> ArgBinding:
    """Resolve each method argument, in declared order.

    Per argument: (1) a working-memory match, (2) an unconsumed entity of the
    declared kind, (3) an unconsumed entity whose kind synonyms intersect the
    nouns of the argument description. Entities are consumed at most once and
    offered in sentence order; NOUN entities only ever match an explicitly
    declared NOUN kind (they name topics, not values). Anything left over is
    reported unresolved, never guessed.
    """
    matcher = synonyms if synonyms is not None else SynonymMatcher()
    ordered = sorted(entities, key=lambda e: e.start)
    consumed: set[int] = set()
    bound: dict[str, BoundArg] = {}
    unresolved: list[str] = []

    for arg in method.args:
        hit = wm_lookup(wm, arg.name)
        if hit is not None:
            key, value = hit
            source = SOURCE_USER if wm.last_source(key) == "user" else SOURCE_WM
            bound[arg.name] = BoundArg(value, source)
            continue

        entity_idx = _match_by_kind(arg, ordered, consumed)
        if entity_idx is None:
            entity_idx = _match_by_synonym(arg, ordered, consumed, matcher, noun_lexicon)
        if entity_idx is not None:
            consumed.add(entity_idx)
            bound[arg.name] = BoundArg(ordered[entity_idx].normalized, SOURCE_ENTITY)
            continue

        unresolved.append(arg.name)

    return ArgBinding(bound=bound, unresolved=tuple(unresolved))


def _match_by_kind(arg: ArgDescriptor, ordered: list[Entity], consumed: set[int]) -> int | None:
    if arg.declared_kind is None:
        return None
    for idx, entity in enumerate(ordered):
        if idx in consumed:
            continue
        if entity.kind == EntityKind(arg.declared_kind):
            return idx
    return None


def _match_by_synonym(
    arg: ArgDescriptor,
    ordered: list[Entity],
    consumed: set[int],
    matcher: SynonymMatcher,
    noun_lexicon: frozenset[str] | None,
) -> int | None:
    arg_nouns = extract_nouns(arg.description, noun_lexicon)
    if not arg_nouns:
        return None
    for idx, entity in enumerate(ordered):
        if idx in consumed or entity.kind == EntityKind.NOUN:
            continue
        if matcher.match(entity.kind, arg_nouns) is not None:
            return idx
    return None
