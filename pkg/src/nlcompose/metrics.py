"""Evaluation utilities: confusion-matrix metrics, scalability statistics,
and the organic-mode effort equation (COCOMO II form E = a * KLoC^b * EAF)."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from nlcompose.errors import EmptyCounts, NonPositiveInput, NonPositiveSample


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fn: int
    fp: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fn, self.fp, self.tn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fn + self.fp + self.tn


@dataclass(frozen=True)
class ConfusionMetrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    # Names of metrics whose denominator was zero (reported as 0.0).
    degenerate: tuple[str, ...] = ()


def confusion_metrics(counts: ConfusionCounts) -> ConfusionMetrics:
    """Standard accuracy / precision / recall / F1 from raw counts.

    Zero denominators yield 0.0 and are flagged in `degenerate` instead of
    raising, so a completely one-sided classifier still reports cleanly.
    """
    if counts.total == 0:
        raise EmptyCounts("confusion counts sum to zero")
    degenerate: list[str] = []
    accuracy = (counts.tp + counts.tn) / counts.total

    if counts.tp + counts.fp > 0:
        precision = counts.tp / (counts.tp + counts.fp)
    else:
        precision = 0.0
        degenerate.append("precision")
    if counts.tp + counts.fn > 0:
        recall = counts.tp / (counts.tp + counts.fn)
    else:
        recall = 0.0
        degenerate.append("recall")
    if precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
        degenerate.append("f1")
    return ConfusionMetrics(accuracy, precision, recall, f1, tuple(degenerate))


@dataclass(frozen=True)
class ScalabilityRow:
    n_services: int
    samples: tuple[float, ...]
    harmonic_mean: float
    stddev: float
    tps: float
    rate: float  # improvement over the baseline, as a fraction (0.7721 = 77.21%)

    def to_dict(self) -> dict:
        return {
            "n_services": self.n_services,
            "samples": len(self.samples),
            "harmonic_mean_ms": self.harmonic_mean,
            "stddev_ms": self.stddev,
            "tps_ms": self.tps,
            "rate_percent": self.rate * 100.0,
        }


def harmonic_mean(samples: list[float] | tuple[float, ...]) -> float:
    return len(samples) / sum(1.0 / x for x in samples)


def scalability_stats(
    samples: list[float] | tuple[float, ...],
    n_services: int,
    baseline_tps: float | None = None,
) -> ScalabilityRow:
    """Aggregate response-time samples for one corpus size.

    Harmonic mean damps large outliers; time-per-service divides it by the
    service count; the rate is 1 - tps/baseline_tps against the smallest
    corpus (0 when no baseline is given).
    """
    if not samples:
        raise NonPositiveSample("no samples")
    if any(x <= 0 for x in samples):
        raise NonPositiveSample("samples must be positive durations")
    if n_services <= 0:
        raise NonPositiveSample("n_services must be positive")
    hmean = harmonic_mean(samples)
    stddev = statistics.stdev(samples) if len(samples) > 1 else 0.0
    tps = hmean / n_services
    rate = 0.0 if baseline_tps is None else 1.0 - tps / baseline_tps
    return ScalabilityRow(
        n_services=n_services,
        samples=tuple(samples),
        harmonic_mean=hmean,
        stddev=stddev,
        tps=tps,
        rate=rate,
    )


def cocomo_effort(kloc: float, eaf: float, a: float = 3.2, b: float = 1.05) -> float:
    """Effort in person-months for an organic project: a * kloc^b * eaf."""
    if kloc <= 0 or eaf <= 0:
        raise NonPositiveInput(f"kloc and eaf must be positive, got {kloc}, {eaf}")
    if a <= 0 or b <= 0:
        raise NonPositiveInput(f"model constants must be positive, got a={a}, b={b}")
    return a * math.pow(kloc, b) * eaf
