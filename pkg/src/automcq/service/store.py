"""Single-directory document store: append log plus snapshot.

Every write is appended to a JSONL log and fsynced before the call
returns, so anything acknowledged survives a crash; reopening replays the
log over the last snapshot. ``close()`` compacts the log into a fresh
snapshot. No external database, one directory, good for class-scale
deployments.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Any

_LOG_NAME = "write.log"
_SNAPSHOT_NAME = "snapshot.json"


class DocumentStore:
    def __init__(self, data_dir: str | Path):
        self._dir = Path(data_dir)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._log_path = self._dir / _LOG_NAME
        self._snapshot_path = self._dir / _SNAPSHOT_NAME
        self._lock = threading.Lock()
        self._collections: dict[str, dict[str, Any]] = {}
        self._seq = 0
        self._load()
        self._log_file = open(self._log_path, "a", encoding="utf-8")

    def _load(self) -> None:
        if self._snapshot_path.exists():
            snapshot = json.loads(self._snapshot_path.read_text(encoding="utf-8"))
            self._seq = snapshot["seq"]
            self._collections = snapshot["collections"]
        if not self._log_path.exists():
            return
        with open(self._log_path, encoding="utf-8") as log:
            for line in log:
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError:
                    # A torn final line from a crash mid-append; everything
                    # before it was acknowledged and is intact.
                    continue
                if entry["seq"] <= self._seq:
                    continue
                self._apply(entry)
                self._seq = entry["seq"]

    def _apply(self, entry: dict[str, Any]) -> None:
        collection = self._collections.setdefault(entry["collection"], {})
        if entry["op"] == "put":
            collection[entry["key"]] = entry["doc"]
        elif entry["op"] == "delete":
            collection.pop(entry["key"], None)

    def put(self, collection: str, key: str, doc: dict[str, Any]) -> None:
        """Durably write one document; returns only after the log is synced."""
        with self._lock:
            self._seq += 1
            entry = {
                "seq": self._seq,
                "op": "put",
                "collection": collection,
                "key": key,
                "doc": doc,
            }
            self._log_file.write(json.dumps(entry) + "\n")
            self._log_file.flush()
            os.fsync(self._log_file.fileno())
            self._apply(entry)

    def get(self, collection: str, key: str) -> dict[str, Any] | None:
        doc = self._collections.get(collection, {}).get(key)
        return json.loads(json.dumps(doc)) if doc is not None else None

    def items(self, collection: str) -> list[tuple[str, dict[str, Any]]]:
        """All documents in write order (dict insertion order is replay order)."""
        docs = self._collections.get(collection, {})
        return [(key, json.loads(json.dumps(doc))) for key, doc in docs.items()]

    def count(self, collection: str) -> int:
        return len(self._collections.get(collection, {}))

    @property
    def seq(self) -> int:
        return self._seq

    def snapshot(self) -> None:
        """Compact the log into a snapshot, atomically."""
        with self._lock:
            payload = json.dumps(
                {"seq": self._seq, "collections": self._collections}
            )
            tmp_path = self._snapshot_path.with_suffix(".tmp")
            with open(tmp_path, "w", encoding="utf-8") as tmp:
                tmp.write(payload)
                tmp.flush()
                os.fsync(tmp.fileno())
            os.replace(tmp_path, self._snapshot_path)
            self._log_file.close()
            self._log_file = open(self._log_path, "w", encoding="utf-8")

    def close(self) -> None:
        self.snapshot()
        self._log_file.close()
