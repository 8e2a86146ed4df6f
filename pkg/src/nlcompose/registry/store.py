"""Directory-backed registry: load manifests, publish snapshots, extract the corpus."""

from __future__ import annotations

import hashlib
import logging
from pathlib import Path
from typing import NamedTuple

from nlcompose.errors import NLComposeError, UnknownService
from nlcompose.registry.descriptors import (
    AbstractServiceDescriptor,
    ConcreteServiceDescriptor,
    RegistrySnapshot,
)
from nlcompose.registry.manifest import parse_manifest

log = logging.getLogger(__name__)

MANIFEST_SUFFIXES = (".svc", ".manifest", ".txt")


class CorpusEntry(NamedTuple):
    sentence: str
    service_id: str
    method_id: str


def build_corpus(snapshot: RegistrySnapshot) -> list[CorpusEntry]:
    """One entry per capability sentence per method, in deterministic order.

    Order is (service_id, method_id, capability index); identical sentences on
    different methods stay distinct entries.
    """
    entries: list[CorpusEntry] = []
    for service_id in sorted(snapshot.abstracts):
        service = snapshot.abstracts[service_id]
        for method in sorted(service.methods, key=lambda m: m.method_id):
            for sentence in method.capabilities:
                entries.append(CorpusEntry(sentence, service_id, method.method_id))
    return entries


def lookup_concretes(
    snapshot: RegistrySnapshot, service_id: str
) -> list[ConcreteServiceDescriptor]:
    """All concretes implementing service_id, sorted by concrete_id."""
    if service_id not in snapshot.abstracts:
        raise UnknownService(f"no abstract service {service_id!r} in registry")
    return sorted(
        (c for c in snapshot.concretes.values() if c.implements == service_id),
        key=lambda c: c.concrete_id,
    )


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def load_snapshot(directory: Path | str, version: int = 1) -> RegistrySnapshot:
    """Parse every manifest file under directory into one snapshot.

    Malformed manifests (or ones whose cross-references do not resolve) are
    skipped with a logged diagnostic; the remaining files still form a
    complete, valid snapshot.
    """
    snapshot, _ = _load_directory(Path(directory), version)
    return snapshot


def _load_directory(directory: Path, version: int) -> tuple[RegistrySnapshot, dict[str, str]]:
    files = sorted(
        p for p in directory.iterdir() if p.is_file() and p.suffix in MANIFEST_SUFFIXES
    )
    hashes: dict[str, str] = {}
    abstracts: dict[str, AbstractServiceDescriptor] = {}
    concretes: list[tuple[str, ConcreteServiceDescriptor]] = []

    for path in files:
        data = path.read_bytes()
        hashes[path.name] = _digest(data)
        try:
            descriptor = parse_manifest(data.decode("utf-8"))
        except (NLComposeError, UnicodeDecodeError) as exc:
            log.warning("skipping manifest %s: %s", path.name, exc)
            continue
        if isinstance(descriptor, AbstractServiceDescriptor):
            if descriptor.service_id in abstracts:
                log.warning(
                    "skipping manifest %s: duplicate service id %r",
                    path.name,
                    descriptor.service_id,
                )
                continue
            abstracts[descriptor.service_id] = descriptor
        else:
            concretes.append((path.name, descriptor))

    kept: dict[str, ConcreteServiceDescriptor] = {}
    for filename, concrete in concretes:
        if concrete.concrete_id in kept:
            log.warning(
                "skipping manifest %s: duplicate concrete id %r", filename, concrete.concrete_id
            )
            continue
        abstract = abstracts.get(concrete.implements)
        if abstract is None:
            log.warning(
                "skipping manifest %s: %r implements unknown service %r",
                filename,
                concrete.concrete_id,
                concrete.implements,
            )
            continue
        try:
            concrete.validate(abstract)
        except NLComposeError as exc:
            log.warning("skipping manifest %s: %s", filename, exc)
            continue
        kept[concrete.concrete_id] = concrete

    return RegistrySnapshot(abstracts=abstracts, concretes=kept, version=version), hashes
