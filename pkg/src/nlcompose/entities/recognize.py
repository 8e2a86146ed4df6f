"""Rule-based entity recognition: date/time/money/number grammars plus
gazetteers for locations, persons, and companies, and lexicon nouns for the
rest. Longest match wins; every character belongs to at most one entity."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from nlcompose.entities.lexicon import _read_data_lines, default_noun_lexicon, lemmatize_noun
from nlcompose.entities.types import Entity, EntityKind

MONTHS = {
    "jan": 1, "january": 1,
    "feb": 2, "february": 2,
    "mar": 3, "march": 3,
    "apr": 4, "april": 4,
    "may": 5,
    "jun": 6, "june": 6,
    "jul": 7, "july": 7,
    "aug": 8, "august": 8,
    "sep": 9, "sept": 9, "september": 9,
    "oct": 10, "october": 10,
    "nov": 11, "november": 11,
    "dec": 12, "december": 12,
}

_MONTH_ALT = "|".join(sorted(MONTHS, key=len, reverse=True))
_DAY = r"([0-3]?\d)(?:st|nd|rd|th)?"

# "Sept. 29", "October 11, 2024"
_MONTH_DAY_RE = re.compile(
    rf"\b({_MONTH_ALT})\.?\s+{_DAY}(?:,?\s+(\d{{4}}))?\b", re.IGNORECASE
)
_ISO_DATE_RE = re.compile(r"\b(\d{4})-(\d{2})-(\d{2})\b")
_CLOCK_RE = re.compile(r"\b([01]?\d|2[0-3]):([0-5]\d)\s*(am|pm)?\b", re.IGNORECASE)
_HOUR_RE = re.compile(r"\b([01]?\d)\s*(am|pm)\b", re.IGNORECASE)
_MONEY_RE = re.compile(r"\$\s?(\d{1,3}(?:,\d{3})+|\d+)(?:\.(\d{1,2}))?\b")
_MONEY_WORD_RE = re.compile(
    r"\b(\d{1,3}(?:,\d{3})+|\d+)(?:\.(\d{1,2}))?\s+(dollars|bucks|usd)\b", re.IGNORECASE
)
_NUMBER_RE = re.compile(r"\b\d+(?:\.\d+)?\b")
_WORD_RE = re.compile(r"[A-Za-z][A-Za-z']*")

# Same-length overlap ties resolve toward the more specific kind.
_KIND_PRIORITY = {
    EntityKind.TIME: 0,
    EntityKind.DATE: 1,
    EntityKind.MONEY: 2,
    EntityKind.NUMBER: 3,
    EntityKind.LOCATION: 4,
    EntityKind.PERSON: 5,
    EntityKind.COMPANY: 6,
    EntityKind.NOUN: 7,
}


def money_minor_units(whole: str, cents: str | None) -> int:
    return int(whole.replace(",", "")) * 100 + int((cents or "0").ljust(2, "0"))


def format_money(minor_units: int) -> str:
    """Render integer minor units back to canonical form, e.g. 70000 -> "$700.00"."""
    sign = "-" if minor_units < 0 else ""
    units = abs(minor_units)
    return f"{sign}${units // 100}.{units % 100:02d}"


def _clock_24h(hour: int, minute: int, meridiem: str | None) -> str:
    if meridiem:
        meridiem = meridiem.lower()
        if meridiem == "pm" and hour != 12:
            hour += 12
        elif meridiem == "am" and hour == 12:
            hour = 0
    return f"{hour:02d}:{minute:02d}"


@dataclass(frozen=True)
class _Candidate:
    kind: EntityKind
    start: int
    end: int
    surface: str
    normalized: object


class EntityRecognizer:
    """Configurable recognizer; gazetteers and the noun lexicon are data."""

    def __init__(
        self,
        gazetteers: dict[EntityKind, list[str]] | None = None,
        noun_lexicon: frozenset[str] | None = None,
    ):
        self.noun_lexicon = noun_lexicon if noun_lexicon is not None else default_noun_lexicon()
        gazetteers = gazetteers if gazetteers is not None else _default_gazetteers()
        self._gazetteer_res: list[tuple[EntityKind, re.Pattern[str], dict[str, str]]] = []
        for kind, surfaces in gazetteers.items():
            if not surfaces:
                continue
            canonical = {s.lower(): s for s in surfaces}
            alternation = "|".join(
                re.escape(s) for s in sorted(surfaces, key=len, reverse=True)
            )
            pattern = re.compile(rf"\b(?:{alternation})\b", re.IGNORECASE)
            self._gazetteer_res.append((kind, pattern, canonical))

    def recognize(self, text: str) -> list[Entity]:
        if not text.strip():
            return []
        candidates = self._date_time_candidates(text)
        candidates += self._money_number_candidates(text)
        candidates += self._gazetteer_candidates(text)
        claimed = _resolve_overlaps(candidates)
        claimed += self._noun_candidates(text, claimed)
        claimed.sort(key=lambda c: c.start)
        return [Entity(c.kind, c.surface, c.normalized, (c.start, c.end)) for c in claimed]

    # -- candidate generators ------------------------------------------------

    def _date_time_candidates(self, text: str) -> list[_Candidate]:
        out: list[_Candidate] = []
        dates: list[tuple[int, int, str]] = []  # (start, end, iso) for merging

        for m in _ISO_DATE_RE.finditer(text):
            iso = f"{m.group(1)}-{m.group(2)}-{m.group(3)}"
            dates.append((m.start(), m.end(), iso))
        for m in _MONTH_DAY_RE.finditer(text):
            month = MONTHS[m.group(1).lower()]
            day = int(m.group(2))
            if not 1 <= day <= 31:
                continue
            year = m.group(3)
            iso = f"{year}-{month:02d}-{day:02d}" if year else f"--{month:02d}-{day:02d}"
            dates.append((m.start(), m.end(), iso))

        clocks: list[tuple[int, int, str]] = []
        for m in _CLOCK_RE.finditer(text):
            clocks.append((m.start(), m.end(), _clock_24h(int(m.group(1)), int(m.group(2)), m.group(3))))
        for m in _HOUR_RE.finditer(text):
            clocks.append((m.start(), m.end(), _clock_24h(int(m.group(1)), 0, m.group(2))))

        # "<date> at <clock>" names one instant: merge into a single TIME span.
        for dstart, dend, iso in dates:
            merged = False
            for cstart, cend, clock in clocks:
                if cstart > dend and re.fullmatch(r"\s+at\s+", text[dend:cstart]):
                    out.append(
                        _Candidate(
                            EntityKind.TIME, dstart, cend, text[dstart:cend], f"{iso}T{clock}"
                        )
                    )
                    merged = True
                    break
            if not merged:
                out.append(_Candidate(EntityKind.DATE, dstart, dend, text[dstart:dend], iso))
        for cstart, cend, clock in clocks:
            out.append(_Candidate(EntityKind.TIME, cstart, cend, text[cstart:cend], clock))
        return out

    def _money_number_candidates(self, text: str) -> list[_Candidate]:
        out: list[_Candidate] = []
        for m in _MONEY_RE.finditer(text):
            out.append(
                _Candidate(
                    EntityKind.MONEY,
                    m.start(),
                    m.end(),
                    m.group(0),
                    money_minor_units(m.group(1), m.group(2)),
                )
            )
        for m in _MONEY_WORD_RE.finditer(text):
            out.append(
                _Candidate(
                    EntityKind.MONEY,
                    m.start(),
                    m.end(),
                    m.group(0),
                    money_minor_units(m.group(1), m.group(2)),
                )
            )
        for m in _NUMBER_RE.finditer(text):
            raw = m.group(0)
            value: object = float(raw) if "." in raw else int(raw)
            out.append(_Candidate(EntityKind.NUMBER, m.start(), m.end(), raw, value))
        return out

    def _gazetteer_candidates(self, text: str) -> list[_Candidate]:
        out: list[_Candidate] = []
        for kind, pattern, canonical in self._gazetteer_res:
            for m in pattern.finditer(text):
                out.append(
                    _Candidate(
                        kind, m.start(), m.end(), m.group(0), canonical[m.group(0).lower()]
                    )
                )
        return out

    def _noun_candidates(self, text: str, claimed: list[_Candidate]) -> list[_Candidate]:
        taken = [(c.start, c.end) for c in claimed]
        out: list[_Candidate] = []
        for m in _WORD_RE.finditer(text):
            if any(m.start() < end and start < m.end() for start, end in taken):
                continue
            lemma = lemmatize_noun(m.group(0), self.noun_lexicon)
            if lemma is not None:
                out.append(_Candidate(EntityKind.NOUN, m.start(), m.end(), m.group(0), lemma))
        return out


def _resolve_overlaps(candidates: list[_Candidate]) -> list[_Candidate]:
    """Greedy longest-match-first claim; ties by start then kind priority."""
    ordered = sorted(
        candidates,
        key=lambda c: (-(c.end - c.start), c.start, _KIND_PRIORITY[c.kind]),
    )
    chosen: list[_Candidate] = []
    for cand in ordered:
        if any(cand.start < c.end and c.start < cand.end for c in chosen):
            continue
        chosen.append(cand)
    return chosen


@lru_cache(maxsize=1)
def _default_gazetteers() -> dict[EntityKind, list[str]]:
    return {
        EntityKind.LOCATION: _read_data_lines("locations.txt"),
        EntityKind.PERSON: _read_data_lines("persons.txt"),
        EntityKind.COMPANY: _read_data_lines("companies.txt"),
    }


@lru_cache(maxsize=1)
def _default_recognizer() -> EntityRecognizer:
    return EntityRecognizer()


def recognize_entities(text: str) -> list[Entity]:
    """Recognize entities with the shipped gazetteers and noun lexicon."""
    return _default_recognizer().recognize(text)
