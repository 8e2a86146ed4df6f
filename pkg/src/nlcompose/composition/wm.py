"""Session working memory: a key-value store with an append-only audit log.

Holds resolved argument values, rule inferences, execution results, and
context facts. The audit log carries enough to replay the exact final state
(event-sourcing property used by the test suite).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class AuditEvent:
    op: str  # "put" | "remove"
    key: str
    value: Any
    source: str
    timestamp: float


_MISSING = object()


@dataclass
class WorkingMemory:
    entries: dict[str, Any] = field(default_factory=dict)
    audit: list[AuditEvent] = field(default_factory=list)

    def get(self, key: str, default: Any = None) -> Any:
        return self.entries.get(key, default)

    def has(self, key: str) -> bool:
        return key in self.entries

    def keys(self) -> list[str]:
        return sorted(self.entries)

    def put(self, key: str, value: Any, source: str = "engine") -> None:
        self.entries[key] = value
        self.audit.append(AuditEvent("put", key, value, source, time.time()))

    def remove(self, key: str, source: str = "engine") -> None:
        self.entries.pop(key, None)
        self.audit.append(AuditEvent("remove", key, None, source, time.time()))

    def last_source(self, key: str) -> str | None:
        """Source of the put that last set `key`, or None when absent."""
        if key not in self.entries:
            return None
        for event in reversed(self.audit):
            if event.key == key and event.op == "put":
                return event.source
        return None

    def fingerprint(self) -> int:
        """Order-independent hash of the current entries (refire suppression)."""
        return hash(tuple(sorted((k, _freeze(v)) for k, v in self.entries.items())))

    def copy(self) -> "WorkingMemory":
        """Independent copy sharing no state (used for plan dry-runs)."""
        clone = WorkingMemory(entries=dict(self.entries), audit=list(self.audit))
        return clone

    def as_dict(self) -> dict[str, Any]:
        return dict(self.entries)


def replay_audit(audit: list[AuditEvent]) -> dict[str, Any]:
    """Fold an audit log back into the entries it produces."""
    entries: dict[str, Any] = {}
    for event in audit:
        if event.op == "put":
            entries[event.key] = event.value
        elif event.op == "remove":
            entries.pop(event.key, None)
        else:
            raise ValueError(f"unknown audit op {event.op!r}")
    return entries


def _freeze(value: Any) -> Any:
    if isinstance(value, dict):
        return tuple(sorted((k, _freeze(v)) for k, v in value.items()))
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    if isinstance(value, set):
        return tuple(sorted(_freeze(v) for v in value))
    return value
