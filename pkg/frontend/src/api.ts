/** Thin typed client for the facetmap HTTP API. */

import type {
  BBox,
  CategoryRecord,
  DetailTable,
  MapDocumentJson,
  ProjectionPatch,
  ProjectionStateJson,
  RenderedItem,
  WidgetLayout,
  WidgetPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(`API ${status}: ${detail}`);
  }
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const data = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const detail = data && typeof data === "object" && "detail" in data ? data.detail : text;
      throw new ApiError(response.status, typeof detail === "string" ? detail : JSON.stringify(detail));
    }
    return data as T;
  }

  createMap(body: { title: string; bbox: BBox; snapshot_id: string; layout?: WidgetLayout }) {
    return this.request<MapDocumentJson>("POST", "/maps", body);
  }

  getMap(mapId: string) {
    return this.request<MapDocumentJson>("GET", `/maps/${mapId}`);
  }

  updateMap(mapId: string, body: { title?: string; layout?: WidgetLayout }) {
    return this.request<MapDocumentJson>("PATCH", `/maps/${mapId}`, body);
  }

  categories(prefix = "") {
    return this.request<CategoryRecord[]>("GET", `/categories?prefix=${encodeURIComponent(prefix)}`);
  }

  searchCategory(mapId: string, categoryId: string) {
    return this.request<WidgetPayload>("POST", `/maps/${mapId}/categories`, { category_id: categoryId });
  }

  removeCategory(mapId: string, categoryId: string) {
    return this.request<ProjectionStateJson>("DELETE", `/maps/${mapId}/categories/${categoryId}`);
  }

  widget(mapId: string, categoryId: string) {
    return this.request<WidgetPayload>("GET", `/maps/${mapId}/widgets/${categoryId}`);
  }

  patchProjection(mapId: string, patch: ProjectionPatch) {
    return this.request<ProjectionStateJson>("PATCH", `/maps/${mapId}/projection`, patch);
  }

  items(mapId: string) {
    return this.request<RenderedItem[]>("GET", `/maps/${mapId}/items`);
  }

  countInPolygon(mapId: string, categoryId: string, polygon: [number, number][]) {
    return this.request<{ count: number }>("POST", `/maps/${mapId}/count`, {
      category_id: categoryId,
      polygon,
    });
  }

  itemDetails(mapId: string, itemId: string) {
    return this.request<DetailTable>("GET", `/maps/${mapId}/items/${itemId}`);
  }
}
