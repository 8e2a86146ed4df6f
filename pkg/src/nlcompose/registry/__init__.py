"""Plain-text service manifests, descriptors, and the live registry."""

from nlcompose.registry.descriptors import (
    DEFAULT_QOS_SCALES,
    QOS_PRIORITY,
    AbstractServiceDescriptor,
    ArgDescriptor,
    ConcreteServiceDescriptor,
    MethodDescriptor,
    QoSRequirement,
    RegistrySnapshot,
)
from nlcompose.registry.manifest import parse_manifest, serialize_manifest
from nlcompose.registry.store import (
    CorpusEntry,
    build_corpus,
    load_snapshot,
    lookup_concretes,
)
from nlcompose.registry.watcher import ManifestWatcher, watch_manifests

__all__ = [
    "DEFAULT_QOS_SCALES",
    "QOS_PRIORITY",
    "AbstractServiceDescriptor",
    "ArgDescriptor",
    "ConcreteServiceDescriptor",
    "CorpusEntry",
    "ManifestWatcher",
    "MethodDescriptor",
    "QoSRequirement",
    "RegistrySnapshot",
    "build_corpus",
    "load_snapshot",
    "lookup_concretes",
    "parse_manifest",
    "serialize_manifest",
    "watch_manifests",
]
