"""Persistence for long-lasting map documents and dataset snapshots.

Layout under a data directory:

    categories.json        category mapping config
    snapshots/<id>.ndjson  dataset snapshots (written once, immutable)
    maps/<map_id>.json     one document per custom map

Map documents are mutated under a per-document lock and written
atomically (temp file + rename), so concurrent API requests serialize
into some valid order and a crash never leaves a torn file.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from .geo import BoundingBox, Category
from .ingest import DatasetSnapshot, load_category_config, load_snapshot
from .projection import CategoryProjection, ProjectionState

WIDGET_LAYOUTS = ("checkboxes", "treemap", "sunburst", "sliders-only")
DEFAULT_LAYOUT = "checkboxes"


class UnknownMapError(KeyError):
    pass


class UnknownSnapshotError(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class MapDocument:
    """A persisted custom map: bbox, searched categories, projection."""

    map_id: str
    title: str
    bbox: BoundingBox
    snapshot_id: str
    layout: str
    state: ProjectionState
    created: str
    updated: str
    rev: int = 0

    def __post_init__(self) -> None:
        if self.layout not in WIDGET_LAYOUTS:
            raise ValueError(f"unknown layout {self.layout!r}")
        if self.state.map_id != self.map_id:
            raise ValueError("projection state belongs to a different map")


def map_document_to_json(doc: MapDocument) -> dict:
    return {
        "map_id": doc.map_id,
        "title": doc.title,
        "bbox": {
            "south": doc.bbox.south,
            "west": doc.bbox.west,
            "north": doc.bbox.north,
            "east": doc.bbox.east,
        },
        "snapshot_id": doc.snapshot_id,
        "layout": doc.layout,
        "created": doc.created,
        "updated": doc.updated,
        "rev": doc.rev,
        "projection": projection_state_to_json(doc.state),
    }


def map_document_from_json(data: dict) -> MapDocument:
    return MapDocument(
        map_id=data["map_id"],
        title=data["title"],
        bbox=BoundingBox(**data["bbox"]),
        snapshot_id=data["snapshot_id"],
        layout=data["layout"],
        state=projection_state_from_json(data["projection"]),
        created=data["created"],
        updated=data["updated"],
        rev=data["rev"],
    )


def projection_state_to_json(state: ProjectionState) -> dict:
    return {
        "map_id": state.map_id,
        "searched": list(state.searched),
        "categories": {
            cid: {
                "category_id": proj.category_id,
                "opacity": proj.opacity,
                "hidden": proj.hidden,
                "selections": {fk: sorted(vals) for fk, vals in proj.selections.items()},
            }
            for cid, proj in state.categories.items()
        },
    }


def projection_state_from_json(data: dict) -> ProjectionState:
    categories = {
        cid: CategoryProjection(
            category_id=rec["category_id"],
            opacity=rec["opacity"],
            hidden=rec["hidden"],
            selections={fk: frozenset(vals) for fk, vals in rec["selections"].items()},
        )
        for cid, rec in data["categories"].items()
    }
    return ProjectionState(
        map_id=data["map_id"],
        categories=categories,
        searched=tuple(data["searched"]),
    )


class SnapshotRepository:
    """Resolves snapshot ids to loaded snapshots, with caching.

    Snapshot files are immutable once written, so caching by id is safe.
    """

    def __init__(self, data_dir: str | Path):
        self._dir = Path(data_dir) / "snapshots"
        self._cache: dict[str, DatasetSnapshot] = {}
        self._lock = threading.Lock()

    def path_for(self, snapshot_id: str) -> Path:
        return self._dir / f"{snapshot_id}.ndjson"

    def exists(self, snapshot_id: str) -> bool:
        return self.path_for(snapshot_id).is_file()

    def get(self, snapshot_id: str) -> DatasetSnapshot:
        with self._lock:
            if snapshot_id not in self._cache:
                path = self.path_for(snapshot_id)
                if not path.is_file():
                    raise UnknownSnapshotError(snapshot_id)
                self._cache[snapshot_id] = load_snapshot(path)
            return self._cache[snapshot_id]


class MapStore:
    """Disk-backed store of map documents with per-map write serialization."""

    def __init__(self, data_dir: str | Path):
        self._dir = Path(data_dir) / "maps"
        self._dir.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, map_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(map_id, threading.Lock())

    def _path(self, map_id: str) -> Path:
        return self._dir / f"{map_id}.json"

    def create(
        self,
        title: str,
        bbox: BoundingBox,
        snapshot_id: str,
        layout: str = DEFAULT_LAYOUT,
    ) -> MapDocument:
        map_id = uuid.uuid4().hex[:12]
        now = datetime.now(timezone.utc).isoformat()
        doc = MapDocument(
            map_id=map_id,
            title=title,
            bbox=bbox,
            snapshot_id=snapshot_id,
            layout=layout,
            state=ProjectionState(map_id=map_id),
            created=now,
            updated=now,
        )
        with self._lock_for(map_id):
            self._save(doc)
        return doc

    def get(self, map_id: str) -> MapDocument:
        path = self._path(map_id)
        if not path.is_file():
            raise UnknownMapError(map_id)
        return map_document_from_json(json.loads(path.read_text("utf-8")))

    def mutate(self, map_id: str, fn: Callable[[MapDocument], MapDocument]) -> MapDocument:
        """Load, transform and persist a document atomically."""
        with self._lock_for(map_id):
            doc = self.get(map_id)
            updated = fn(doc)
            updated = replace(
                updated,
                rev=doc.rev + 1,
                updated=datetime.now(timezone.utc).isoformat(),
            )
            self._save(updated)
            return updated

    def _save(self, doc: MapDocument) -> None:
        payload = json.dumps(map_document_to_json(doc), sort_keys=True, indent=2) + "\n"
        fd, tmp = tempfile.mkstemp(dir=self._dir, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(payload)
            os.replace(tmp, self._path(doc.map_id))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def load_service_config(data_dir: str | Path) -> list[Category]:
    return load_category_config(Path(data_dir) / "categories.json")
