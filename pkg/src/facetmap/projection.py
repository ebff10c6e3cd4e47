"""Visualization-constraint state and visibility resolution.

A projection is purely visual: it decides which items are drawn, at
what opacity, and which facets get highlighted. The stored data is
never touched. Constraint semantics: values selected within one facet
disjoin (OR); selections across distinct facets conjoin (AND); an item
lacking a selected facet matches only through the NOT SPECIFIED
sentinel.

All state updates are functional; callers serialize writes per map.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .geo import NOT_SPECIFIED, GeoItem, Point, Polygon, representative_point


class UnknownCategoryError(KeyError):
    """The category is not part of the projection state."""


@dataclass(frozen=True, slots=True)
class CategoryProjection:
    """Per-category visualization constraints."""

    category_id: str
    opacity: float = 1.0
    hidden: bool = False
    selections: dict[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0.0 <= self.opacity <= 1.0:
            raise ValueError(f"opacity must be in [0, 1], got {self.opacity}")
        for facet_key, values in self.selections.items():
            if not values:
                raise ValueError(f"empty selection set for facet {facet_key!r}")


@dataclass(frozen=True, slots=True)
class ProjectionState:
    """The whole "what is visible" contract for one map."""

    map_id: str
    categories: dict[str, CategoryProjection] = field(default_factory=dict)
    searched: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.searched)) != len(self.searched):
            raise ValueError("searched list contains duplicates")
        if set(self.searched) != set(self.categories):
            raise ValueError("searched list and projected categories differ")


@dataclass(frozen=True, slots=True)
class VisibilityResult:
    visible: bool
    opacity: float
    highlighted_facets: tuple[str, ...] = ()


def add_category(state: ProjectionState, category_id: str) -> ProjectionState:
    """Append a category with default projection; no-op when present."""
    if category_id in state.categories:
        return state
    categories = dict(state.categories)
    categories[category_id] = CategoryProjection(category_id=category_id)
    return replace(state, categories=categories, searched=state.searched + (category_id,))


def remove_category(state: ProjectionState, category_id: str) -> ProjectionState:
    _require(state, category_id)
    categories = {cid: p for cid, p in state.categories.items() if cid != category_id}
    searched = tuple(cid for cid in state.searched if cid != category_id)
    return replace(state, categories=categories, searched=searched)


def set_opacity(state: ProjectionState, category_id: str, opacity: float) -> ProjectionState:
    proj = _require(state, category_id)
    return _put(state, replace(proj, opacity=opacity))


def set_hidden(state: ProjectionState, category_id: str, flag: bool) -> ProjectionState:
    # Opacity persists unchanged across hide toggles.
    proj = _require(state, category_id)
    return _put(state, replace(proj, hidden=flag))


def toggle_value(state: ProjectionState, category_id: str, facet_key: str, value: str) -> ProjectionState:
    """Add the value to the facet's OR set if absent, remove it if present.

    A facet entry whose set empties is deleted, so selection sets are
    never empty.
    """
    proj = _require(state, category_id)
    selections = dict(proj.selections)
    current = selections.get(facet_key, frozenset())
    updated = current - {value} if value in current else current | {value}
    if updated:
        selections[facet_key] = updated
    else:
        selections.pop(facet_key, None)
    return _put(state, replace(proj, selections=selections))


def _require(state: ProjectionState, category_id: str) -> CategoryProjection:
    try:
        return state.categories[category_id]
    except KeyError:
        raise UnknownCategoryError(category_id) from None


def _put(state: ProjectionState, proj: CategoryProjection) -> ProjectionState:
    categories = dict(state.categories)
    categories[proj.category_id] = proj
    return replace(state, categories=categories)


def item_visibility(item: GeoItem, state: ProjectionState) -> VisibilityResult:
    """Resolve one item against the projection state.

    Hidden dominates everything. Otherwise the item is visible iff for
    every facet with a selection set its value belongs to the set; an
    absent facet matches only when NOT SPECIFIED is selected. Visible
    items render at the category opacity with every constrained facet
    highlighted.
    """
    proj = state.categories.get(item.category_id)
    if proj is None or proj.hidden:
        return VisibilityResult(visible=False, opacity=0.0)
    for facet_key, selected in proj.selections.items():
        value = item.facets.get(facet_key)
        matched = NOT_SPECIFIED in selected if value is None else value in selected
        if not matched:
            return VisibilityResult(visible=False, opacity=0.0)
    return VisibilityResult(
        visible=True,
        opacity=proj.opacity,
        highlighted_facets=tuple(proj.selections),
    )


def resolve_projection(
    items: list[GeoItem], state: ProjectionState
) -> list[tuple[GeoItem, VisibilityResult]]:
    """Order-stable filter of the input down to visible items."""
    resolved = []
    for item in items:
        result = item_visibility(item, state)
        if result.visible:
            resolved.append((item, result))
    return resolved


def point_in_polygon(p: Point, polygon: Polygon) -> bool:
    """Even-odd ray-casting containment test; boundary points count as inside."""
    ring = polygon.ring
    inside = False
    for i in range(len(ring)):
        a, b = ring[i], ring[(i + 1) % len(ring)]
        if _on_segment(p, a, b):
            return True
        if (a.lat > p.lat) != (b.lat > p.lat):
            x_cross = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat)
            if p.lon < x_cross:
                inside = not inside
    return inside


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon)
    if cross != 0.0:
        return False
    return (
        min(a.lon, b.lon) <= p.lon <= max(a.lon, b.lon)
        and min(a.lat, b.lat) <= p.lat <= max(a.lat, b.lat)
    )


def count_in_polygon(items: list[GeoItem], state: ProjectionState, polygon: Polygon) -> int:
    """Count items that are visible AND whose representative point lies
    inside the polygon.

    This is deliberately narrower than widget counts, which always
    refer to the whole map bounding box.
    """
    return sum(
        1
        for item in items
        if item_visibility(item, state).visible
        and point_in_polygon(representative_point(item.geometry), polygon)
    )
