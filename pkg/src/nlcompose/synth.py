"""Seeded synthetic fixtures: topic-clustered word vectors and manifest pools.

No pretrained model ships with the package, so tests and benchmarks run on a
synthetic vocabulary: each topic gets a random unit anchor, words of the
topic sit near it (tiny jitter), and generic action verbs are down-scaled so
domain nouns dominate a sentence mean. Everything is reproducible from the
seed.
"""

from __future__ import annotations

import random
from pathlib import Path

import numpy as np

from nlcompose.embedding.model import EmbeddingModel

ACTION_TOPIC = "action"

TOPIC_WORDS: dict[str, tuple[str, ...]] = {
    ACTION_TOPIC: (
        "check", "checks", "checking", "look", "looks", "looking",
        "search", "searches", "searching", "find", "finds", "finding",
        "get", "gets", "getting", "show", "shows", "list", "lists",
        "validate", "validates", "arrange", "arranges", "suggest", "suggests",
    ),
    "calendar": (
        "calendar", "schedule", "schedules", "agenda", "availability",
        "appointment", "appointments", "meeting", "meetings", "slot", "slots",
        "conflict", "conflicts", "busy", "free", "date", "dates", "day",
        "days", "range", "weekend",
    ),
    "flight": (
        "flight", "flights", "fly", "flying", "plane", "airfare", "airline",
        "airlines", "airport", "ticket", "tickets",
    ),
    "booking": (
        "book", "books", "booked", "booking", "reserve", "reserves",
        "reserved", "reservation", "reservations", "chosen", "selected",
    ),
    "hotel": (
        "hotel", "hotels", "room", "rooms", "accommodation", "stay",
        "lodging", "night", "nights", "nightly", "inn", "downtown",
    ),
    "weather": (
        "weather", "forecast", "rain", "temperature", "sunny", "cloudy",
        "conditions", "climate", "snow", "storm",
    ),
    "transport": (
        "taxi", "cab", "ride", "rides", "car", "bus", "train", "transport",
        "transportation", "ground", "transfer", "pickup",
    ),
    "messaging": (
        "message", "messages", "send", "sends", "sent", "text", "notify",
        "notifies", "notification", "email", "sms", "contact",
    ),
    "leisure": (
        "activity", "activities", "leisure", "attraction", "attractions",
        "tour", "tours", "museum", "museums", "event", "events",
        "entertainment", "indoor", "outdoor", "fun", "sightseeing",
    ),
    "maps": (
        "map", "maps", "route", "routes", "direction", "directions",
        "navigate", "navigation", "distance", "nearby",
    ),
    "money": (
        "price", "prices", "cost", "costs", "cheap", "cheaper", "cheapest",
        "expensive", "budget", "fare", "fares", "dollars", "money",
        "maximum", "minimum", "less", "below", "under",
    ),
    "geo": (
        "city", "cities", "place", "places", "destination", "origin",
        "town", "location",
    ),
    "trip": (
        "plan", "plans", "trip", "trips", "travel", "traveling", "vacation",
        "visit",
    ),
}


def _unit(vector: np.ndarray) -> np.ndarray:
    return vector / np.linalg.norm(vector)


def synthetic_model(
    dimension: int = 50,
    seed: int = 1234,
    jitter: float = 0.08,
    action_scale: float = 0.25,
) -> EmbeddingModel:
    """Topic-anchored vocabulary; action verbs carry `action_scale` norm."""
    rng = np.random.default_rng(seed)
    vocab: dict[str, np.ndarray] = {}
    for topic in sorted(TOPIC_WORDS):
        anchor = _unit(rng.normal(size=dimension))
        scale = action_scale if topic == ACTION_TOPIC else 1.0
        for word in TOPIC_WORDS[topic]:
            vocab[word] = _unit(anchor + jitter * rng.normal(size=dimension)) * scale
    return EmbeddingModel(dimension=dimension, vocab=vocab, name=f"synthetic-{dimension}d-s{seed}")


def write_vectors_file(path: Path | str, model: EmbeddingModel) -> Path:
    """Write the model in the word-vector text format (with a header line)."""
    path = Path(path)
    lines = [f"{len(model.vocab)} {model.dimension}"]
    for token in model.vocab:  # insertion order: deterministic per seed
        values = " ".join(f"{v:.8f}" for v in model.vocab[token])
        lines.append(f"{token} {values}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


# --- bench manifest pool ---------------------------------------------------------

_BENCH_TOPICS = tuple(t for t in sorted(TOPIC_WORDS) if t != ACTION_TOPIC)


def synthetic_manifests(count: int, seed: int = 1234) -> dict[str, str]:
    """`count` abstract-service manifests drawn from a seeded template pool."""
    rng = random.Random(seed)
    manifests: dict[str, str] = {}
    for i in range(count):
        topic = _BENCH_TOPICS[i % len(_BENCH_TOPICS)]
        words = TOPIC_WORDS[topic]
        actions = TOPIC_WORDS[ACTION_TOPIC]
        service_id = f"{topic.capitalize()}Service{i:05d}"
        method_id = f"handle{i:05d}"
        capabilities = []
        for _ in range(rng.randint(2, 3)):
            sampled = rng.sample(words, k=min(4, len(words)))
            capabilities.append(f"{rng.choice(actions)} {' '.join(sampled)}")
        lines = [f"service {service_id}", f"  method {method_id}"]
        lines += [f'    capability "{c}"' for c in capabilities]
        n_args = rng.randint(0, 2)
        for a in range(n_args):
            noun = rng.choice(words)
            lines.append(f'    arg arg{a} "the {noun} to use"')
        lines.append(f'    returns result{i:05d} "the {rng.choice(words)} produced"')
        manifests[f"{service_id}.svc"] = "\n".join(lines) + "\n"
    return manifests


def bench_requests(seed: int = 1234, count: int = 3) -> list[str]:
    """Deterministic free-text requests reusing the synthetic vocabulary."""
    rng = random.Random(seed + 1)
    requests = []
    for _ in range(count):
        topic = rng.choice(_BENCH_TOPICS)
        words = rng.sample(TOPIC_WORDS[topic], k=3)
        action = rng.choice(TOPIC_WORDS[ACTION_TOPIC])
        requests.append(f"{action} the {words[0]} with {words[1]} and {words[2]}")
    return requests
