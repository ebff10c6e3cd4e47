/** Wire types of the facetmap HTTP API. */

export const NOT_SPECIFIED = "NOT SPECIFIED";

export type WidgetLayout = "checkboxes" | "treemap" | "sunburst" | "sliders-only";

export const WIDGET_LAYOUTS: WidgetLayout[] = ["checkboxes", "treemap", "sunburst", "sliders-only"];

export interface BBox {
  south: number;
  west: number;
  north: number;
  east: number;
}

export interface CategoryRecord {
  id: string;
  label: string;
  color: string;
  icon: string;
  tag_key: string;
  tag_value: string;
}

export interface ValueEntry {
  value: string;
  count: number;
}

export interface FacetEntry {
  facet_key: string;
  values: ValueEntry[];
  hidden_tail: ValueEntry[];
  not_specified_count: number;
}

export interface WidgetPayload {
  category_id: string;
  facets: FacetEntry[];
}

export interface CategoryProjectionJson {
  category_id: string;
  opacity: number;
  hidden: boolean;
  selections: Record<string, string[]>;
}

export interface ProjectionStateJson {
  map_id: string;
  searched: string[];
  categories: Record<string, CategoryProjectionJson>;
}

export interface MapDocumentJson {
  map_id: string;
  title: string;
  bbox: BBox;
  snapshot_id: string;
  layout: WidgetLayout;
  created: string;
  updated: string;
  rev: number;
  projection: ProjectionStateJson;
}

export type GeometryJson =
  | { type: "point"; coords: [number, number] }
  | { type: "polygon"; coords: [number, number][] };

export interface RenderedItem {
  id: string;
  category: string;
  geometry: GeometryJson;
  color: string;
  icon: string;
  opacity: number;
  highlighted_facets: string[];
  display_name: string | null;
}

export interface DetailRow {
  facet: string;
  value: string;
  highlighted: boolean;
}

export interface DetailTable {
  item_id: string;
  category: string;
  color: string;
  display_name: string | null;
  rows: DetailRow[];
}

export interface ProjectionPatch {
  category_id: string;
  opacity?: number;
  hidden?: boolean;
  toggles?: { facet: string; value: string }[];
}

/** Representative point of an item geometry (polygon = ring vertex mean). */
export function representativePoint(geometry: GeometryJson): [number, number] {
  if (geometry.type === "point") {
    return geometry.coords;
  }
  const ring = geometry.coords;
  let lon = 0;
  let lat = 0;
  for (const [x, y] of ring) {
    lon += x;
    lat += y;
  }
  return [lon / ring.length, lat / ring.length];
}
