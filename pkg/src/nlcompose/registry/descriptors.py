"""Descriptor types for abstract/concrete services and registry snapshots."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from nlcompose.errors import InvariantError, UnknownService

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Ordinal QoS scales, weakest level first. Dimensions are open-ended: scales
# for extra dimensions can be registered through engine configuration.
DEFAULT_QOS_SCALES: dict[str, tuple[str, ...]] = {
    "BATTERY": ("LOW_BATTERY", "HALF_CHARGED", "FULLY_CHARGED"),
    "CONNECTIVITY": ("LOCAL", "REQUIRES_WIFI"),
    "ACCURACY": ("LOW", "MEDIUM", "HIGH"),
}

# Dimensions checked first win ties; battery outranks connectivity outranks
# accuracy (a drained battery stops everything, missing wifi only remote calls).
QOS_PRIORITY: tuple[str, ...] = ("BATTERY", "CONNECTIVITY", "ACCURACY")


@dataclass(frozen=True)
class ArgDescriptor:
    """One method argument: name, free-text description, optional kind hint."""

    name: str
    description: str
    declared_kind: str | None = None

    def validate(self) -> None:
        if not IDENT_RE.match(self.name):
            raise InvariantError(f"bad argument name {self.name!r}")
        if not self.description.strip():
            raise InvariantError(f"argument {self.name!r} has an empty description")


@dataclass(frozen=True)
class MethodDescriptor:
    """One callable method with its capability sentences and argument docs."""

    method_id: str
    capabilities: tuple[str, ...]
    args: tuple[ArgDescriptor, ...] = ()
    returns_key: str | None = None
    returns_desc: str | None = None

    def validate(self) -> None:
        if not IDENT_RE.match(self.method_id):
            raise InvariantError(f"bad method id {self.method_id!r}")
        if not self.capabilities:
            raise InvariantError(f"method {self.method_id!r} declares no capabilities")
        if any(not c.strip() for c in self.capabilities):
            raise InvariantError(f"method {self.method_id!r} has an empty capability")
        names = [a.name for a in self.args]
        if len(set(names)) != len(names):
            raise InvariantError(f"method {self.method_id!r} repeats an argument name")
        for a in self.args:
            a.validate()

    def arg(self, name: str) -> ArgDescriptor:
        for a in self.args:
            if a.name == name:
                return a
        raise KeyError(name)


@dataclass(frozen=True)
class AbstractServiceDescriptor:
    """A functional interface realizable by any number of concrete services."""

    service_id: str
    methods: tuple[MethodDescriptor, ...]

    def validate(self) -> None:
        if not IDENT_RE.match(self.service_id):
            raise InvariantError(f"bad service id {self.service_id!r}")
        if not self.methods:
            raise InvariantError(f"service {self.service_id!r} declares no methods")
        ids = [m.method_id for m in self.methods]
        if len(set(ids)) != len(ids):
            raise InvariantError(f"service {self.service_id!r} repeats a method id")
        for m in self.methods:
            m.validate()

    def method(self, method_id: str) -> MethodDescriptor:
        for m in self.methods:
            if m.method_id == method_id:
                return m
        raise KeyError(method_id)


@dataclass(frozen=True)
class QoSRequirement:
    """Minimum ordinal level a device must reach on one QoS dimension."""

    dimension: str
    required_level: str

    def validate(self, scales: dict[str, tuple[str, ...]] | None = None) -> None:
        scales = scales or DEFAULT_QOS_SCALES
        scale = scales.get(self.dimension)
        if scale is None:
            raise InvariantError(f"unknown QoS dimension {self.dimension!r}")
        if self.required_level not in scale:
            raise InvariantError(
                f"level {self.required_level!r} not on the {self.dimension} scale {scale}"
            )


@dataclass(frozen=True)
class ConcreteServiceDescriptor:
    """An executable implementation of an abstract service."""

    concrete_id: str
    implements: str
    qos: dict[str, tuple[QoSRequirement, ...]] = field(default_factory=dict)
    executor_binding: str = "mock"

    def validate(self, abstract: AbstractServiceDescriptor | None = None) -> None:
        if not IDENT_RE.match(self.concrete_id):
            raise InvariantError(f"bad concrete id {self.concrete_id!r}")
        for method_id, reqs in self.qos.items():
            for r in reqs:
                r.validate()
            if abstract is not None:
                try:
                    abstract.method(method_id)
                except KeyError:
                    raise InvariantError(
                        f"{self.concrete_id!r} declares QoS for unknown method {method_id!r}"
                    ) from None

    def requirements_for(self, method_id: str) -> tuple[QoSRequirement, ...]:
        return self.qos.get(method_id, ())


@dataclass(frozen=True)
class RegistrySnapshot:
    """Immutable view of every registered descriptor at one version."""

    abstracts: dict[str, AbstractServiceDescriptor]
    concretes: dict[str, ConcreteServiceDescriptor]
    version: int

    def method(self, service_id: str, method_id: str) -> MethodDescriptor:
        try:
            service = self.abstracts[service_id]
        except KeyError:
            raise UnknownService(f"no abstract service {service_id!r} in registry") from None
        return service.method(method_id)
