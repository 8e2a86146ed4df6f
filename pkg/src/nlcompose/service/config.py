"""Engine configuration: thresholds, paths, context facts, executor wiring."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from nlcompose.matching import MatchThresholds


@dataclass
class EngineConfig:
    thresholds: MatchThresholds = field(default_factory=MatchThresholds)
    poll_interval: float = 2.0
    executor_timeout: float = 10.0
    manifests_dir: str | None = None
    vectors_path: str | None = None
    gazetteer_paths: dict[str, str] = field(default_factory=dict)
    synonyms_path: str | None = None
    noun_lexicon_path: str | None = None
    rules_path: str | None = None
    # Facts preloaded into every new session's working memory (user profile,
    # sensor state, ... the things a device would already know).
    context_facts: dict[str, Any] = field(default_factory=dict)
    # Current device levels per QoS dimension.
    device_context: dict[str, str] = field(default_factory=dict)
    executors: dict[str, dict[str, Any]] = field(default_factory=dict)
    bench_seed: int = 1234

    @classmethod
    def from_file(cls, path: str | Path) -> "EngineConfig":
        raw = json.loads(Path(path).read_text("utf-8"))
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "EngineConfig":
        thresholds = MatchThresholds(**raw.get("thresholds", {}))
        known = {
            "poll_interval",
            "executor_timeout",
            "manifests_dir",
            "vectors_path",
            "gazetteer_paths",
            "synonyms_path",
            "noun_lexicon_path",
            "rules_path",
            "context_facts",
            "device_context",
            "executors",
            "bench_seed",
        }
        kwargs = {k: v for k, v in raw.items() if k in known}
        unknown = set(raw) - known - {"thresholds"}
        if unknown:
            raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
        return cls(thresholds=thresholds, **kwargs)
