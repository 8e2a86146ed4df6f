"""QoS-aware concrete service selection over ordinal requirement scales."""

from __future__ import annotations

from dataclasses import dataclass, field

from nlcompose.errors import NoViableConcrete
from nlcompose.registry.descriptors import (
    DEFAULT_QOS_SCALES,
    QOS_PRIORITY,
    ConcreteServiceDescriptor,
    QoSRequirement,
)


@dataclass(frozen=True)
class DeviceContext:
    """Current device levels per QoS dimension (e.g. BATTERY=HALF_CHARGED)."""

    levels: dict[str, str] = field(default_factory=dict)
    scales: dict[str, tuple[str, ...]] = field(default_factory=lambda: dict(DEFAULT_QOS_SCALES))

    def __post_init__(self):
        for dimension, level in self.levels.items():
            scale = self.scales.get(dimension)
            if scale is None:
                raise ValueError(f"unknown QoS dimension {dimension!r}")
            if level not in scale:
                raise ValueError(f"level {level!r} not on the {dimension} scale {scale}")

    def satisfies(self, requirement: QoSRequirement) -> bool:
        """True when the current level meets or exceeds the required one.

        A dimension missing from the context cannot be verified and counts
        as unsatisfied (execution is only guaranteed when requirements are
        known to hold).
        """
        scale = self.scales.get(requirement.dimension)
        if scale is None or requirement.required_level not in scale:
            return False
        current = self.levels.get(requirement.dimension)
        if current is None:
            return False
        return scale.index(current) >= scale.index(requirement.required_level)

    def level_index(self, dimension: str, level: str | None) -> int:
        if level is None:
            return -1
        scale = self.scales.get(dimension, ())
        return scale.index(level) if level in scale else -1


def select_concrete(
    candidates: list[ConcreteServiceDescriptor],
    method_id: str,
    context: DeviceContext,
) -> ConcreteServiceDescriptor:
    """Pick the concrete whose requirements the device meets.

    Candidates with any unmet requirement for the method are filtered out.
    Survivors are ranked by their declared requirement levels in dimension
    priority order (battery first), strictest requirement first; ties fall
    back to lexicographic concrete id. Raises NoViableConcrete when nothing
    survives.
    """
    viable = [
        c
        for c in candidates
        if all(context.satisfies(req) for req in c.requirements_for(method_id))
    ]
    if not viable:
        raise NoViableConcrete(
            f"no concrete for {method_id!r} satisfies the device context {context.levels}"
        )

    def strictness_key(concrete: ConcreteServiceDescriptor):
        reqs = {r.dimension: r.required_level for r in concrete.requirements_for(method_id)}
        ranked = tuple(
            -context.level_index(dim, reqs.get(dim)) for dim in QOS_PRIORITY
        )
        return (*ranked, concrete.concrete_id)

    return min(viable, key=strictness_key)
