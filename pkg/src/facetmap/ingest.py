"""Parsing and normalization of crowdsourced geodata.

Input is Overpass-style JSON (an object with an "elements" array).
Elements are normalized into :class:`~facetmap.geo.GeoItem` records:
tag keys become facet keys ("outdoor_seating" -> "Outdoor Seating"),
tag values are uppercased but kept atomic, and items are assigned to
categories through a flat mapping config (first matching key=value
predicate wins).

Dataset snapshots persist as UTF-8 line-delimited JSON: a header line
followed by one record per item.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .geo import (
    NOT_SPECIFIED,
    BoundingBox,
    Category,
    GeoItem,
    Geometry,
    Point,
    Polygon,
    bbox_contains,
    representative_point,
)

SNAPSHOT_FORMAT_VERSION = 1


class OverpassFormatError(ValueError):
    """Raised when an input document is not usable Overpass JSON."""


class SnapshotFormatError(ValueError):
    """Raised when a snapshot file is corrupted; names the bad line."""


class ConfigFormatError(ValueError):
    """Raised when a category mapping config is invalid."""


@dataclass(frozen=True, slots=True)
class RawElement:
    """One entry of an Overpass result, before categorization."""

    element_type: str  # node | way | relation
    id: int
    coordinates: Point | tuple[Point, ...]
    tags: dict[str, str]


@dataclass(frozen=True, slots=True)
class OverpassParse:
    elements: list[RawElement]
    dropped: int  # entries without usable coordinates


@dataclass(frozen=True, slots=True)
class DatasetSnapshot:
    """A persisted set of categorized items inside one bounding box."""

    snapshot_id: str
    bbox: BoundingBox
    created: datetime
    items: tuple[GeoItem, ...]

    def __post_init__(self) -> None:
        for item in self.items:
            if not bbox_contains(self.bbox, representative_point(item.geometry)):
                raise ValueError(f"item {item.id!r} lies outside the snapshot bbox")


def normalize_tag_key(raw_key: str) -> str:
    """Turn a raw tag key into a display facet key.

    Keys are lowercased, ':' and '_' become spaces, and every word is
    title-cased: "addr:city" -> "Addr City". Idempotent on its own
    outputs.
    """
    words = raw_key.lower().replace(":", " ").replace("_", " ").split()
    if not words:
        return raw_key
    return " ".join(_capitalize_word(w) for w in words)


def _capitalize_word(word: str) -> str:
    # Case mappings that expand one char into several (e.g. U+0149)
    # would break idempotence of the normalization; leave those alone.
    head = word[:1].upper()
    if len(head) != 1:
        return word
    return head + word[1:]


def normalize_tag_value(raw_value: str) -> str:
    """Normalize a raw tag value into its atomic display form.

    Values are uppercased and ";"-separated segments are rejoined with
    "; " ("italian;pizza" -> "ITALIAN; PIZZA"). The value stays one
    atomic string; it is never split into multiple values.
    """
    segments = [" ".join(seg.split()) for seg in raw_value.split(";")]
    return "; ".join(seg.upper() for seg in segments if seg)


def parse_overpass(data: bytes | str) -> OverpassParse:
    """Parse an Overpass JSON document into raw elements.

    Entries with usable coordinates (node lat/lon, way/relation
    "geometry" or "center") become :class:`RawElement`; the rest are
    dropped and counted.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        offset = len(text[: e.pos].encode("utf-8"))
        raise OverpassFormatError(f"malformed JSON at byte offset {offset}: {e.msg}") from e
    if not isinstance(doc, dict) or "elements" not in doc:
        raise OverpassFormatError('not an Overpass document: missing "elements" array')
    if not isinstance(doc["elements"], list):
        raise OverpassFormatError('"elements" is not an array')

    elements: list[RawElement] = []
    dropped = 0
    for entry in doc["elements"]:
        element = _parse_element(entry)
        if element is None:
            dropped += 1
        else:
            elements.append(element)
    return OverpassParse(elements=elements, dropped=dropped)


def _parse_element(entry: object) -> RawElement | None:
    if not isinstance(entry, dict):
        return None
    element_type = entry.get("type")
    osm_id = entry.get("id")
    if element_type not in ("node", "way", "relation") or not isinstance(osm_id, int):
        return None
    coordinates = _parse_coordinates(entry)
    if coordinates is None:
        return None
    tags = entry.get("tags") or {}
    if not isinstance(tags, dict):
        return None
    tags = {k: str(v) for k, v in tags.items() if isinstance(k, str) and k}
    return RawElement(element_type=element_type, id=osm_id, coordinates=coordinates, tags=tags)


def _parse_coordinates(entry: dict) -> Point | tuple[Point, ...] | None:
    lat, lon = entry.get("lat"), entry.get("lon")
    if _is_number(lat) and _is_number(lon):
        return _safe_point(lon, lat)

    geometry = entry.get("geometry")
    if isinstance(geometry, list):
        vertices = []
        for vertex in geometry:
            if not (isinstance(vertex, dict) and _is_number(vertex.get("lat")) and _is_number(vertex.get("lon"))):
                continue
            p = _safe_point(vertex["lon"], vertex["lat"])
            if p is not None:
                vertices.append(p)
        # Closed ways repeat the first vertex at the end; storage does not.
        if len(vertices) > 1 and vertices[0] == vertices[-1]:
            vertices.pop()
        if len(vertices) >= 3:
            return tuple(vertices)
        if vertices:
            return vertices[0]

    center = entry.get("center")
    if isinstance(center, dict) and _is_number(center.get("lat")) and _is_number(center.get("lon")):
        return _safe_point(center["lon"], center["lat"])
    return None


def _is_number(v: object) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _safe_point(lon: float, lat: float) -> Point | None:
    try:
        return Point(lon=float(lon), lat=float(lat))
    except ValueError:
        return None


def parse_category_config(data: bytes | str) -> list[Category]:
    """Parse a mapping config: a JSON array of category records."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigFormatError(f"malformed config JSON: {e.msg}") from e
    if not isinstance(doc, list):
        raise ConfigFormatError("config must be a JSON array of category records")
    categories = []
    seen: set[str] = set()
    for i, rec in enumerate(doc):
        try:
            category = Category(
                id=rec["id"],
                label=rec["label"],
                color=rec["color"],
                icon=rec["icon"],
                tag_key=rec["tag_key"],
                tag_value=rec["tag_value"],
            )
        except (TypeError, KeyError, ValueError) as e:
            raise ConfigFormatError(f"config entry {i}: {e}") from e
        if category.id in seen:
            raise ConfigFormatError(f"duplicate category id {category.id!r}")
        seen.add(category.id)
        categories.append(category)
    return categories


def load_category_config(path: str | Path) -> list[Category]:
    return parse_category_config(Path(path).read_bytes())


def assign_category(element: RawElement, config: list[Category]) -> Category | None:
    """First category whose key=value predicate matches the raw tags."""
    for category in config:
        if element.tags.get(category.tag_key) == category.tag_value:
            return category
    return None


def element_to_item(element: RawElement, category: Category) -> GeoItem:
    """Convert a categorized raw element into a GeoItem.

    The predicate tag is the category, not a facet, so it is removed
    from the facet map. Values normalizing to the empty string or to
    the NOT SPECIFIED sentinel are treated as unspecified.
    """
    facets: dict[str, str] = {}
    for raw_key, raw_value in element.tags.items():
        if raw_key == category.tag_key:
            continue
        value = normalize_tag_value(raw_value)
        if not value or value == NOT_SPECIFIED:
            continue
        facets.setdefault(normalize_tag_key(raw_key), value)

    coords = element.coordinates
    geometry: Geometry = coords if isinstance(coords, Point) else Polygon(ring=coords)
    name = element.tags.get("name", "").strip()
    return GeoItem(
        id=f"{element.element_type}/{element.id}",
        category_id=category.id,
        geometry=geometry,
        facets=facets,
        display_name=name or None,
    )


def build_snapshot(
    elements: list[RawElement],
    config: list[Category],
    bbox: BoundingBox,
    *,
    snapshot_id: str | None = None,
    created: datetime | None = None,
) -> DatasetSnapshot:
    """Categorize elements, keep those inside the bbox, build a snapshot."""
    items = []
    for element in elements:
        category = assign_category(element, config)
        if category is None:
            continue
        item = element_to_item(element, category)
        if bbox_contains(bbox, representative_point(item.geometry)):
            items.append(item)
    return DatasetSnapshot(
        snapshot_id=snapshot_id or uuid.uuid4().hex,
        bbox=bbox,
        created=created or datetime.now(timezone.utc),
        items=tuple(items),
    )


# -- snapshot persistence ---------------------------------------------------
#
# Line 1 header: {"format_version": 1, "id": ..., "bbox": {...}, "created": ISO-8601}
# Each further line: {"id", "category", "geom": {"type", "coords"}, "facets"}
# plus "display_name" when present. Files are append-only and immutable
# once written.


def write_snapshot(snapshot: DatasetSnapshot) -> bytes:
    header = {
        "format_version": SNAPSHOT_FORMAT_VERSION,
        "id": snapshot.snapshot_id,
        "bbox": {
            "south": snapshot.bbox.south,
            "west": snapshot.bbox.west,
            "north": snapshot.bbox.north,
            "east": snapshot.bbox.east,
        },
        "created": snapshot.created.isoformat(),
    }
    lines = [json.dumps(header, ensure_ascii=False)]
    for item in snapshot.items:
        record = {
            "id": item.id,
            "category": item.category_id,
            "geom": geometry_to_json(item.geometry),
            "facets": item.facets,
        }
        if item.display_name is not None:
            record["display_name"] = item.display_name
        lines.append(json.dumps(record, ensure_ascii=False))
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_snapshot(data: bytes) -> DatasetSnapshot:
    lines = data.decode("utf-8").splitlines()
    if not lines:
        raise SnapshotFormatError("line 1: empty snapshot file")

    def fail(lineno: int, reason: str) -> SnapshotFormatError:
        return SnapshotFormatError(f"line {lineno}: {reason}")

    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise fail(1, f"bad header: {e.msg}") from e
    if not isinstance(header, dict) or header.get("format_version") != SNAPSHOT_FORMAT_VERSION:
        raise fail(1, "unsupported or missing format_version")
    try:
        bbox = BoundingBox(**header["bbox"])
        created = datetime.fromisoformat(header["created"])
        snapshot_id = str(header["id"])
    except (TypeError, KeyError, ValueError) as e:
        raise fail(1, f"bad header: {e}") from e

    items = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            raise fail(lineno, "blank record line")
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise fail(lineno, f"bad record: {e.msg}") from e
        try:
            items.append(
                GeoItem(
                    id=record["id"],
                    category_id=record["category"],
                    geometry=geometry_from_json(record["geom"]),
                    facets=dict(record["facets"]),
                    display_name=record.get("display_name"),
                )
            )
        except (TypeError, KeyError, ValueError) as e:
            raise fail(lineno, f"bad record: {e}") from e

    try:
        return DatasetSnapshot(snapshot_id=snapshot_id, bbox=bbox, created=created, items=tuple(items))
    except ValueError as e:
        raise SnapshotFormatError(str(e)) from e


def save_snapshot(snapshot: DatasetSnapshot, path: str | Path) -> None:
    Path(path).write_bytes(write_snapshot(snapshot))


def load_snapshot(path: str | Path) -> DatasetSnapshot:
    return read_snapshot(Path(path).read_bytes())


def geometry_to_json(geometry: Geometry) -> dict:
    if isinstance(geometry, Point):
        return {"type": "point", "coords": [geometry.lon, geometry.lat]}
    return {"type": "polygon", "coords": [[p.lon, p.lat] for p in geometry.ring]}


def geometry_from_json(geom: dict) -> Geometry:
    kind, coords = geom["type"], geom["coords"]
    if kind == "point":
        return Point(lon=coords[0], lat=coords[1])
    if kind == "polygon":
        return Polygon(ring=tuple(Point(lon=c[0], lat=c[1]) for c in coords))
    raise ValueError(f"unknown geometry type {kind!r}")
