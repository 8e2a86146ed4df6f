"""Similarity-based service selection.

Given candidates ranked by cosine similarity, either select the top method,
ask the user to disambiguate among mid-range candidates, or reject the
request so the user can re-phrase it. Thresholds default to empirically
satisfactory values (upper 0.6, lower 0.2, near-tie delta 0.01) and are
overridable per request and via engine configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from nlcompose.errors import EmptyCandidates

DISAMBIGUATION_CAP = 5


@dataclass(frozen=True)
class MatchCandidate:
    service_id: str
    method_id: str
    similarity: float

    def __post_init__(self):
        if not math.isfinite(self.similarity):
            raise ValueError(f"non-finite similarity for {self.service_id}.{self.method_id}")


@dataclass(frozen=True)
class MatchThresholds:
    t1: float = 0.6
    t2: float = 0.2
    delta: float = 0.01

    def __post_init__(self):
        if not (0.0 <= self.t2 <= self.t1 <= 1.0):
            raise ValueError(f"need 0 <= t2 <= t1 <= 1, got t1={self.t1}, t2={self.t2}")
        if self.delta < 0.0:
            raise ValueError(f"delta must be non-negative, got {self.delta}")


@dataclass(frozen=True)
class Selected:
    candidate: MatchCandidate


@dataclass(frozen=True)
class NeedsDisambiguation:
    candidates: tuple[MatchCandidate, ...]


@dataclass(frozen=True)
class NoMatch:
    pass


MatchOutcome = Selected | NeedsDisambiguation | NoMatch


def select_service(
    candidates: list[MatchCandidate] | tuple[MatchCandidate, ...],
    thresholds: MatchThresholds = MatchThresholds(),
) -> MatchOutcome:
    """Pick an outcome from candidates sorted descending by similarity.

    With top similarity s1: at or above the upper threshold the top candidate
    is selected outright (a near-tie within delta still selects the maximum
    rather than bothering the user); between the thresholds the user
    disambiguates among the candidates clearing the lower threshold (capped
    at 5, padded with the runner-up when only one clears it so there is a
    real choice); below the lower threshold nothing is selectable.
    """
    if not candidates:
        raise EmptyCandidates("no candidates to select from")
    top = candidates[0]
    if top.similarity >= thresholds.t1:
        return Selected(top)
    if top.similarity >= thresholds.t2:
        pool = [c for c in candidates if c.similarity >= thresholds.t2]
        if len(pool) == 1 and len(candidates) > 1:
            pool.append(candidates[1])
        return NeedsDisambiguation(tuple(pool[:DISAMBIGUATION_CAP]))
    return NoMatch()
