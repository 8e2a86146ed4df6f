"""Entity kinds and the recognized-entity record."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any


class EntityKind(str, enum.Enum):
    NOUN = "NOUN"
    PERSON = "PERSON"
    COMPANY = "COMPANY"
    NUMBER = "NUMBER"
    MONEY = "MONEY"
    TIME = "TIME"
    DATE = "DATE"
    LOCATION = "LOCATION"

    def __str__(self) -> str:  # "LOCATION" rather than "EntityKind.LOCATION"
        return self.value


@dataclass(frozen=True)
class Entity:
    """One recognized span: surface text plus a canonical normalized value.

    Normalized forms: DATE -> ISO-8601 (`2024-10-11`, yearless `--09-29`),
    TIME -> 24h clock (`22:30`, datetime `--08-10T10:30`), MONEY -> integer
    minor units (cents), NUMBER -> int/float, NOUN -> lemma, gazetteer kinds
    -> canonical gazetteer casing.
    """

    kind: EntityKind
    surface: str
    normalized: Any
    span: tuple[int, int]

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]
