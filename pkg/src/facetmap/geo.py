"""Core domain types: items, categories, geometry, bounding boxes.

Everything here is an immutable value object; instances can be shared
freely between threads.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Union

# Sentinel facet value for "this item does not carry the facet".  It is
# selectable as a visualization constraint and is excluded from value
# histograms.
NOT_SPECIFIED = "NOT SPECIFIED"

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")


@dataclass(frozen=True, slots=True)
class Point:
    """A WGS84 coordinate pair, longitude first."""

    lon: float
    lat: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lon) and math.isfinite(self.lat)):
            raise ValueError(f"non-finite coordinates: ({self.lon}, {self.lat})")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"longitude out of range: {self.lon}")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude out of range: {self.lat}")


@dataclass(frozen=True, slots=True)
class Polygon:
    """A simple polygon given as its outer ring.

    The ring is implicitly closed: the first vertex is not repeated at
    the end.
    """

    ring: tuple[Point, ...]

    def __post_init__(self) -> None:
        if len(self.ring) < 3:
            raise ValueError(f"polygon ring needs >= 3 vertices, got {len(self.ring)}")


Geometry = Union[Point, Polygon]


@dataclass(frozen=True, slots=True)
class BoundingBox:
    """Axis-aligned geographic box; antimeridian-crossing boxes unsupported."""

    south: float
    west: float
    north: float
    east: float

    def __post_init__(self) -> None:
        if not self.south < self.north:
            raise ValueError(f"south ({self.south}) must be < north ({self.north})")
        if not self.west < self.east:
            raise ValueError(f"west ({self.west}) must be < east ({self.east})")
        if not -90.0 <= self.south <= 90.0 or not -90.0 <= self.north <= 90.0:
            raise ValueError("latitude bounds out of range")
        if not -180.0 <= self.west <= 180.0 or not -180.0 <= self.east <= 180.0:
            raise ValueError("longitude bounds out of range")


@dataclass(frozen=True, slots=True)
class Category:
    """A data category, with its display style and the tag predicate that
    selects its items from raw data."""

    id: str
    label: str
    color: str
    icon: str
    tag_key: str
    tag_value: str

    def __post_init__(self) -> None:
        if not _HEX_COLOR.match(self.color):
            raise ValueError(f"category {self.id!r}: color {self.color!r} is not #RRGGBB")
        if not self.tag_key or not self.tag_value:
            raise ValueError(f"category {self.id!r}: tag predicate must be non-empty")


@dataclass(frozen=True, slots=True)
class GeoItem:
    """One mapped entity.

    Facet values are atomic strings: a raw value containing separators
    (e.g. "ITALIAN; PIZZA") is one value and is never split.
    """

    id: str
    category_id: str
    geometry: Geometry
    facets: dict[str, str] = field(default_factory=dict)
    display_name: str | None = None


def representative_point(geometry: Geometry) -> Point:
    """A single point standing in for the geometry.

    Points map to themselves; polygons map to the arithmetic mean of
    their ring vertices.
    """
    if isinstance(geometry, Point):
        return geometry
    n = len(geometry.ring)
    return Point(
        lon=sum(p.lon for p in geometry.ring) / n,
        lat=sum(p.lat for p in geometry.ring) / n,
    )


def bbox_contains(bbox: BoundingBox, p: Point) -> bool:
    """True iff the point lies inside the box, boundary inclusive."""
    return bbox.west <= p.lon <= bbox.east and bbox.south <= p.lat <= bbox.north
