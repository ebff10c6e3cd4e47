"""HTTP service for long-lasting custom maps.

All bodies are JSON. Endpoints:

    POST   /maps                                   create a map document
    GET    /maps/{map_id}                          fetch a map document
    PATCH  /maps/{map_id}                          update title / widget layout
    GET    /categories?prefix=                     category auto-completion
    POST   /maps/{map_id}/categories               search a category, get its widget
    DELETE /maps/{map_id}/categories/{category_id} drop a category from the side bar
    GET    /maps/{map_id}/widgets/{category_id}    widget payload of a searched category
    PATCH  /maps/{map_id}/projection               opacity / hide / value toggles
    GET    /maps/{map_id}/items                    rendered records of visible items
    POST   /maps/{map_id}/count                    polygon-scoped visible-item count
    GET    /maps/{map_id}/items/{item_id}          detail table with highlight flags

Errors: 404 unknown resource, 400 invalid body, 409 stale-revision
precondition on projection patches.
"""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import projection as proj
from .analytics import RankingConfig, WidgetPayload, build_widget_payload, rank_facets
from .geo import BoundingBox, Category, GeoItem, Point, Polygon, bbox_contains, representative_point
from .ingest import geometry_to_json
from .store import (
    DEFAULT_LAYOUT,
    WIDGET_LAYOUTS,
    MapDocument,
    MapStore,
    SnapshotRepository,
    UnknownMapError,
    UnknownSnapshotError,
    load_service_config,
    map_document_to_json,
    projection_state_to_json,
)

UNSTYLED_COLOR = "#888888"
UNSTYLED_ICON = "marker"


class BBoxBody(BaseModel):
    south: float
    west: float
    north: float
    east: float


class CreateMapBody(BaseModel):
    title: str
    bbox: BBoxBody
    snapshot_id: str
    layout: str = DEFAULT_LAYOUT


class UpdateMapBody(BaseModel):
    title: str | None = None
    layout: str | None = None


class SearchCategoryBody(BaseModel):
    category_id: str


class ToggleBody(BaseModel):
    facet: str
    value: str


class ProjectionPatchBody(BaseModel):
    category_id: str
    opacity: float | None = None
    hidden: bool | None = None
    toggles: list[ToggleBody] = Field(default_factory=list)
    # Optional optimistic-concurrency precondition: when set and stale,
    # the patch is rejected with 409 so the client can refetch and retry.
    rev: int | None = None


class CountBody(BaseModel):
    category_id: str
    polygon: list[tuple[float, float]]  # [[lon, lat], ...]


def create_app(data_dir: str | Path) -> FastAPI:
    data_dir = Path(data_dir)
    categories = load_service_config(data_dir)
    categories_by_id = {c.id: c for c in categories}
    snapshots = SnapshotRepository(data_dir)
    maps = MapStore(data_dir)

    app = FastAPI(title="facetmap", version="0.1.0")
    # single-user tool; the browser client may be served from any origin
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    async def invalid_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    def get_map(map_id: str) -> MapDocument:
        try:
            return maps.get(map_id)
        except UnknownMapError:
            raise HTTPException(status_code=404, detail=f"unknown map {map_id!r}")

    def category_or_404(category_id: str) -> Category:
        category = categories_by_id.get(category_id)
        if category is None:
            raise HTTPException(status_code=404, detail=f"unknown category {category_id!r}")
        return category

    def items_in_bbox(doc: MapDocument) -> list[GeoItem]:
        snapshot = snapshots.get(doc.snapshot_id)
        return [
            item
            for item in snapshot.items
            if bbox_contains(doc.bbox, representative_point(item.geometry))
        ]

    def category_items(doc: MapDocument, category_id: str) -> list[GeoItem]:
        return [item for item in items_in_bbox(doc) if item.category_id == category_id]

    def widget_json(doc: MapDocument, category_id: str) -> dict:
        items = category_items(doc, category_id)
        ranking = rank_facets(items, RankingConfig())
        payload = build_widget_payload(items, ranking, RankingConfig(), category_id=category_id)
        return widget_payload_to_json(payload)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/maps", status_code=201)
    def create_map(body: CreateMapBody):
        try:
            bbox = BoundingBox(**body.bbox.model_dump())
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
        if body.layout not in WIDGET_LAYOUTS:
            raise HTTPException(status_code=400, detail=f"unknown layout {body.layout!r}")
        if not snapshots.exists(body.snapshot_id):
            raise HTTPException(status_code=404, detail=f"unknown snapshot {body.snapshot_id!r}")
        doc = maps.create(title=body.title, bbox=bbox, snapshot_id=body.snapshot_id, layout=body.layout)
        return map_document_to_json(doc)

    @app.get("/maps/{map_id}")
    def fetch_map(map_id: str):
        return map_document_to_json(get_map(map_id))

    @app.patch("/maps/{map_id}")
    def update_map(map_id: str, body: UpdateMapBody):
        get_map(map_id)
        if body.layout is not None and body.layout not in WIDGET_LAYOUTS:
            raise HTTPException(status_code=400, detail=f"unknown layout {body.layout!r}")

        def apply(doc: MapDocument) -> MapDocument:
            if body.title is not None:
                doc = replace(doc, title=body.title)
            if body.layout is not None:
                doc = replace(doc, layout=body.layout)
            return doc

        return map_document_to_json(maps.mutate(map_id, apply))

    @app.get("/categories")
    def list_categories(prefix: str = ""):
        needle = prefix.lower()
        matches = [
            c
            for c in categories
            if c.label.lower().startswith(needle) or c.id.lower().startswith(needle)
        ]
        return [
            {
                "id": c.id,
                "label": c.label,
                "color": c.color,
                "icon": c.icon,
                "tag_key": c.tag_key,
                "tag_value": c.tag_value,
            }
            for c in matches
        ]

    @app.post("/maps/{map_id}/categories")
    def search_category(map_id: str, body: SearchCategoryBody):
        get_map(map_id)
        category = category_or_404(body.category_id)

        def apply(doc: MapDocument) -> MapDocument:
            return replace(doc, state=proj.add_category(doc.state, category.id))

        doc = maps.mutate(map_id, apply)
        return widget_json(doc, category.id)

    @app.delete("/maps/{map_id}/categories/{category_id}")
    def unsearch_category(map_id: str, category_id: str):
        get_map(map_id)

        def apply(doc: MapDocument) -> MapDocument:
            try:
                return replace(doc, state=proj.remove_category(doc.state, category_id))
            except proj.UnknownCategoryError:
                raise HTTPException(
                    status_code=404, detail=f"category {category_id!r} is not searched"
                )

        return projection_state_to_json(maps.mutate(map_id, apply).state)

    @app.get("/maps/{map_id}/widgets/{category_id}")
    def fetch_widget(map_id: str, category_id: str):
        doc = get_map(map_id)
        category_or_404(category_id)
        if category_id not in doc.state.searched:
            raise HTTPException(status_code=404, detail=f"category {category_id!r} is not searched")
        return widget_json(doc, category_id)

    @app.patch("/maps/{map_id}/projection")
    def patch_projection(map_id: str, body: ProjectionPatchBody):
        get_map(map_id)

        def apply(doc: MapDocument) -> MapDocument:
            if body.rev is not None and body.rev != doc.rev:
                raise HTTPException(
                    status_code=409,
                    detail=f"map changed concurrently (rev {doc.rev}); refetch and retry",
                )
            state = doc.state
            try:
                if body.opacity is not None:
                    state = proj.set_opacity(state, body.category_id, body.opacity)
                if body.hidden is not None:
                    state = proj.set_hidden(state, body.category_id, body.hidden)
                for toggle in body.toggles:
                    state = proj.toggle_value(state, body.category_id, toggle.facet, toggle.value)
            except proj.UnknownCategoryError:
                raise HTTPException(
                    status_code=404, detail=f"category {body.category_id!r} is not searched"
                )
            except ValueError as e:
                raise HTTPException(status_code=400, detail=str(e))
            return replace(doc, state=state)

        return projection_state_to_json(maps.mutate(map_id, apply).state)

    @app.get("/maps/{map_id}/items")
    def visible_items(map_id: str):
        doc = get_map(map_id)
        records = []
        for item, vis in proj.resolve_projection(items_in_bbox(doc), doc.state):
            category = categories_by_id.get(item.category_id)
            records.append(
                {
                    "id": item.id,
                    "category": item.category_id,
                    "geometry": geometry_to_json(item.geometry),
                    "color": category.color if category else UNSTYLED_COLOR,
                    "icon": category.icon if category else UNSTYLED_ICON,
                    "opacity": vis.opacity,
                    "highlighted_facets": list(vis.highlighted_facets),
                    "display_name": item.display_name,
                }
            )
        return records

    @app.post("/maps/{map_id}/count")
    def count_items(map_id: str, body: CountBody):
        doc = get_map(map_id)
        category_or_404(body.category_id)
        try:
            ring = Polygon(ring=tuple(Point(lon=lon, lat=lat) for lon, lat in body.polygon))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
        items = category_items(doc, body.category_id)
        return {"count": proj.count_in_polygon(items, doc.state, ring)}

    @app.get("/maps/{map_id}/items/{item_id:path}")
    def item_details(map_id: str, item_id: str):
        doc = get_map(map_id)
        snapshot = snapshots.get(doc.snapshot_id)
        item = next((i for i in snapshot.items if i.id == item_id), None)
        if item is None:
            raise HTTPException(status_code=404, detail=f"unknown item {item_id!r}")
        highlighted = set(proj.item_visibility(item, doc.state).highlighted_facets)
        category = categories_by_id.get(item.category_id)
        rows = []
        if item.display_name is not None:
            rows.append({"facet": "Display Name", "value": item.display_name, "highlighted": False})
        for facet_key in sorted(item.facets):
            rows.append(
                {
                    "facet": facet_key,
                    "value": item.facets[facet_key],
                    "highlighted": facet_key in highlighted,
                }
            )
        return {
            "item_id": item.id,
            "category": item.category_id,
            "color": category.color if category else UNSTYLED_COLOR,
            "display_name": item.display_name,
            "rows": rows,
        }

    return app


def widget_payload_to_json(payload: WidgetPayload) -> dict:
    return {
        "category_id": payload.category_id,
        "facets": [
            {
                "facet_key": entry.facet_key,
                "values": [{"value": v.value, "count": v.count} for v in entry.values],
                "hidden_tail": [{"value": v.value, "count": v.count} for v in entry.hidden_tail],
                "not_specified_count": entry.not_specified_count,
            }
            for entry in payload.facets
        ],
    }
