"""Faceted projection of heterogeneous geographic data.

Engine for ranking the facets of crowdsourced map items by exploration
cost, resolving multi-category visualization constraints, and serving
long-lasting custom maps over HTTP.
"""

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

__all__ = [
    "NOT_SPECIFIED",
    "BoundingBox",
    "Category",
    "GeoItem",
    "Geometry",
    "Point",
    "Polygon",
    "bbox_contains",
    "representative_point",
]

__version__ = "0.1.0"
