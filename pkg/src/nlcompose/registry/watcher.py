"""Polling watcher that republishes a registry snapshot when manifests change.

Change detection is content-hash based, so touching a file without editing it
emits nothing. Snapshots are immutable and swapped atomically; readers may
keep any version they already hold.
"""

from __future__ import annotations

import logging
import threading
from collections.abc import Callable, Iterator
from pathlib import Path

from nlcompose.registry.descriptors import RegistrySnapshot
from nlcompose.registry.store import _load_directory

log = logging.getLogger(__name__)


class ManifestWatcher:
    def __init__(self, directory: Path | str, poll_interval: float = 2.0):
        self.directory = Path(directory)
        if not self.directory.is_dir():
            raise FileNotFoundError(f"manifest directory {self.directory} does not exist")
        self.poll_interval = poll_interval
        self._hashes: dict[str, str] | None = None
        self._version = 0
        self._current: RegistrySnapshot | None = None
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None
        self._listeners: list[Callable[[RegistrySnapshot], None]] = []

    @property
    def current(self) -> RegistrySnapshot:
        if self._current is None:
            snapshot = self.poll_once()
            assert snapshot is not None
            return snapshot
        return self._current

    def subscribe(self, listener: Callable[[RegistrySnapshot], None]) -> None:
        self._listeners.append(listener)

    def poll_once(self) -> RegistrySnapshot | None:
        """Rescan the directory; return a new snapshot if anything changed."""
        snapshot, hashes = _load_directory(self.directory, self._version + 1)
        if hashes == self._hashes:
            return None
        self._hashes = hashes
        self._version += 1
        self._current = snapshot
        log.info(
            "registry snapshot v%d: %d abstract, %d concrete",
            snapshot.version,
            len(snapshot.abstracts),
            len(snapshot.concretes),
        )
        for listener in self._listeners:
            listener(snapshot)
        return snapshot

    def watch(self) -> Iterator[RegistrySnapshot]:
        """Yield snapshots as they are published, polling until stopped."""
        while not self._stop.is_set():
            snapshot = self.poll_once()
            if snapshot is not None:
                yield snapshot
            self._stop.wait(self.poll_interval)

    def start(self) -> None:
        if self._thread is not None:
            return
        self.poll_once()
        self._thread = threading.Thread(target=self._loop, daemon=True, name="manifest-watcher")
        self._thread.start()

    def _loop(self) -> None:
        while not self._stop.wait(self.poll_interval):
            try:
                self.poll_once()
            except Exception:
                log.exception("manifest poll failed")

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=self.poll_interval + 1)
            self._thread = None


def watch_manifests(
    directory: Path | str, poll_interval: float = 2.0
) -> Iterator[RegistrySnapshot]:
    """Stream snapshots for a manifest directory (first yield is the initial load)."""
    watcher = ManifestWatcher(directory, poll_interval)
    yield from watcher.watch()
