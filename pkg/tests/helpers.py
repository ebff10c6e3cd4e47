"""Shared test utilities: item factories and independent oracles.

The oracles here deliberately re-derive behavior from first principles
(naive filters, a second containment algorithm, direct summation) so
the engine is checked against something it does not share code with.
"""

from __future__ import annotations

import math
import random

from facetmap.geo import NOT_SPECIFIED, GeoItem, Point, Polygon
from facetmap.projection import CategoryProjection, ProjectionState


def make_item(
    item_id: str,
    category: str = "restaurants",
    lon: float = 7.65,
    lat: float = 45.05,
    facets: dict[str, str] | None = None,
    display_name: str | None = None,
) -> GeoItem:
    return GeoItem(
        id=item_id,
        category_id=category,
        geometry=Point(lon=lon, lat=lat),
        facets=facets or {},
        display_name=display_name,
    )


def make_state(
    map_id: str = "m",
    projections: list[CategoryProjection] | None = None,
) -> ProjectionState:
    projections = projections or []
    return ProjectionState(
        map_id=map_id,
        categories={p.category_id: p for p in projections},
        searched=tuple(p.category_id for p in projections),
    )


# -- independent oracles ------------------------------------------------------


def entropy_by_direct_summation(counts: dict[str, int]) -> float:
    """Entropy oracle: explicit probability list, fsum, log(x, 2)."""
    total = sum(counts.values())
    if total == 0:
        return 0.0
    probabilities = [c / total for c in counts.values()]
    return -math.fsum(p * math.log(p, 2) for p in probabilities if p > 0)


def naive_visible_set(items: list[GeoItem], state: ProjectionState) -> list[GeoItem]:
    """Brute-force reimplementation of the constraint semantics.

    Literal reading: per searched, non-hidden category keep
    {x in E_C | for every constrained facet f, f(x) is in the selected
    set}, where a missing facet has the NOT SPECIFIED value.
    """
    visible = []
    for item in items:
        if item.category_id not in state.searched:
            continue
        proj = state.categories[item.category_id]
        if proj.hidden:
            continue
        satisfied_all = True
        for facet, allowed in proj.selections.items():
            value = item.facets[facet] if facet in item.facets else NOT_SPECIFIED
            if value not in allowed:
                satisfied_all = False
                break
        if satisfied_all:
            visible.append(item)
    return visible


def winding_number_contains(p: Point, polygon: Polygon) -> bool:
    """Second containment algorithm: winding number, boundary inclusive."""
    ring = polygon.ring
    wn = 0
    for i in range(len(ring)):
        a, b = ring[i], ring[(i + 1) % len(ring)]
        if _point_on_edge(p, a, b):
            return True
        side = (b.lon - a.lon) * (p.lat - a.lat) - (p.lon - a.lon) * (b.lat - a.lat)
        if a.lat <= p.lat:
            if b.lat > p.lat and side > 0:
                wn += 1
        elif b.lat <= p.lat and side < 0:
            wn -= 1
    return wn != 0


def _point_on_edge(p: Point, a: Point, b: Point) -> bool:
    area2 = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon)
    if area2 != 0.0:
        return False
    within_lon = min(a.lon, b.lon) <= p.lon <= max(a.lon, b.lon)
    within_lat = min(a.lat, b.lat) <= p.lat <= max(a.lat, b.lat)
    return within_lon and within_lat


def random_star_polygon(rng: random.Random, cx: float, cy: float, max_radius: float) -> Polygon:
    """A simple (non-self-intersecting) polygon: random radii at sorted angles."""
    n = rng.randint(3, 12)
    angles = sorted(rng.uniform(0.0, 2.0 * math.pi) for _ in range(n))
    # Collapse nearly-equal angles to keep edges non-degenerate.
    distinct = [angles[0]]
    for angle in angles[1:]:
        if angle - distinct[-1] > 1e-3:
            distinct.append(angle)
    while len(distinct) < 3:
        distinct.append(distinct[-1] + 1.0)
    ring = tuple(
        Point(
            lon=cx + rng.uniform(0.1, 1.0) * max_radius * math.cos(a),
            lat=cy + rng.uniform(0.1, 1.0) * max_radius * math.sin(a),
        )
        for a in distinct
    )
    return Polygon(ring=ring)


def random_snapshot_items(
    rng: random.Random,
    max_items: int = 200,
    max_facets: int = 6,
    max_values: int = 8,
    categories: tuple[str, ...] = ("alpha", "beta", "gamma"),
) -> list[GeoItem]:
    """Small random dataset for the constraint-semantics oracle."""
    facet_pool = [f"Facet {chr(ord('A') + i)}" for i in range(max_facets)]
    value_pool = [f"V{i}" for i in range(max_values)]
    items = []
    for i in range(rng.randint(0, max_items)):
        facets = {
            facet: rng.choice(value_pool)
            for facet in facet_pool
            if rng.random() < 0.55
        }
        items.append(
            GeoItem(
                id=f"node/{i}",
                category_id=rng.choice(categories),
                geometry=Point(lon=rng.uniform(7.0, 8.0), lat=rng.uniform(44.5, 45.5)),
                facets=facets,
            )
        )
    return items


def random_projection_state(
    rng: random.Random,
    items: list[GeoItem],
    categories: tuple[str, ...] = ("alpha", "beta", "gamma"),
) -> ProjectionState:
    """Random searched categories with random opacity/hide/selections."""
    facet_pool = sorted({f for item in items for f in item.facets}) or ["Facet A"]
    value_pool = [f"V{i}" for i in range(8)] + [NOT_SPECIFIED]
    projections = []
    for category in categories:
        if rng.random() < 0.2:
            continue  # never searched
        selections: dict[str, frozenset[str]] = {}
        for facet in rng.sample(facet_pool, k=rng.randint(0, min(3, len(facet_pool)))):
            chosen = frozenset(rng.sample(value_pool, k=rng.randint(1, 4)))
            selections[facet] = chosen
        projections.append(
            CategoryProjection(
                category_id=category,
                opacity=round(rng.random(), 3),
                hidden=rng.random() < 0.25,
                selections=selections,
            )
        )
    return make_state(projections=projections)
