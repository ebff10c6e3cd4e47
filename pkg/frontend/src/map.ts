/** Map pane: tile background, per-category colored markers with opacity,
 * radius-based clusters with member counts, polygon outlines.
 *
 * Tiles come from a configurable public template; with no template (or
 * offline) the pane degrades to a plain background, which keeps every
 * marker interaction working.
 */

import { clusterItems } from "./cluster.js";
import { fitBBox, lonLatToScreen, screenToLonLat, TILE_SIZE, type Viewport } from "./mercator.js";
import type { ExplorerStore } from "./state.js";
import { representativePoint, type RenderedItem } from "./types.js";
import { el, svgEl } from "./widgets/common.js";

export interface MapPaneOptions {
  tileUrl?: string; // e.g. "https://tile.example.org/{z}/{x}/{y}.png"
  width?: number;
  height?: number;
}

export class MapPane {
  viewport: Viewport;
  private readonly tileUrl: string;
  private readonly tilesLayer: HTMLElement;
  private readonly overlay: SVGSVGElement;
  private fitted = false;

  constructor(
    private readonly container: HTMLElement,
    private readonly store: ExplorerStore,
    options: MapPaneOptions = {},
  ) {
    const doc = container.ownerDocument;
    const width = options.width ?? container.clientWidth ?? 800;
    const height = options.height ?? container.clientHeight ?? 600;
    this.tileUrl = options.tileUrl ?? "";
    this.viewport = { centerLon: 7.66, centerLat: 45.07, zoom: 12, width, height };

    container.classList.add("map-pane");
    this.tilesLayer = el(doc, "div", "tile-layer");
    this.overlay = svgEl(doc, "svg", {
      class: "marker-layer",
      width: String(width),
      height: String(height),
      viewBox: `0 0 ${width} ${height}`,
    });
    container.append(this.tilesLayer, this.overlay);

    this.bindPanAndZoom();
    store.subscribe(() => this.render());
  }

  private bindPanAndZoom(): void {
    const doc = this.container.ownerDocument;
    let dragging = false;
    let lastX = 0;
    let lastY = 0;
    this.container.addEventListener("pointerdown", (event) => {
      dragging = true;
      lastX = event.clientX;
      lastY = event.clientY;
    });
    doc.addEventListener("pointermove", (event) => {
      if (!dragging) return;
      const before = screenToLonLat(this.viewport, this.viewport.width / 2, this.viewport.height / 2);
      const movedCenter = screenToLonLat(
        this.viewport,
        this.viewport.width / 2 - (event.clientX - lastX),
        this.viewport.height / 2 - (event.clientY - lastY),
      );
      lastX = event.clientX;
      lastY = event.clientY;
      if (Number.isFinite(movedCenter[0]) && Number.isFinite(movedCenter[1])) {
        this.viewport.centerLon = movedCenter[0];
        this.viewport.centerLat = Math.max(-85, Math.min(85, movedCenter[1]));
      } else {
        this.viewport.centerLon = before[0];
      }
      this.render();
    });
    doc.addEventListener("pointerup", () => {
      dragging = false;
    });
    this.container.addEventListener("wheel", (event) => {
      event.preventDefault();
      this.setZoom(this.viewport.zoom + (event.deltaY < 0 ? 1 : -1));
    });
  }

  setZoom(zoom: number): void {
    this.viewport.zoom = Math.max(2, Math.min(19, zoom));
    this.render();
  }

  render(): void {
    const doc = this.container.ownerDocument;
    const map = this.store.doc;
    if (map && !this.fitted) {
      this.viewport = fitBBox(map.bbox, this.viewport.width, this.viewport.height);
      this.fitted = true;
    }
    this.renderTiles(doc);
    this.renderMarkers(doc);
  }

  private renderTiles(doc: Document): void {
    this.tilesLayer.replaceChildren();
    if (!this.tileUrl) return;
    const vp = this.viewport;
    const z = Math.round(vp.zoom);
    const scale = TILE_SIZE * 2 ** z;
    const topLeft = screenToLonLat(vp, 0, 0);
    const bottomRight = screenToLonLat(vp, vp.width, vp.height);
    const [wx0, wy0] = [((topLeft[0] + 180) / 360) * scale, mercY(topLeft[1]) * scale];
    const [wx1, wy1] = [((bottomRight[0] + 180) / 360) * scale, mercY(bottomRight[1]) * scale];
    const maxTile = 2 ** z - 1;
    for (let tx = Math.floor(wx0 / TILE_SIZE); tx <= Math.floor(wx1 / TILE_SIZE); tx++) {
      for (let ty = Math.floor(wy0 / TILE_SIZE); ty <= Math.floor(wy1 / TILE_SIZE); ty++) {
        if (tx < 0 || ty < 0 || tx > maxTile || ty > maxTile) continue;
        const img = el(doc, "img", "map-tile") as HTMLImageElement;
        img.src = this.tileUrl.replace("{z}", String(z)).replace("{x}", String(tx)).replace("{y}", String(ty));
        img.style.left = `${tx * TILE_SIZE - wx0}px`;
        img.style.top = `${ty * TILE_SIZE - wy0}px`;
        img.addEventListener("error", () => img.remove());
        this.tilesLayer.append(img);
      }
    }
  }

  private renderMarkers(doc: Document): void {
    this.overlay.replaceChildren();
    const groups = clusterItems(this.store.items, this.viewport.zoom);
    for (const group of groups) {
      const [x, y] = lonLatToScreen(this.viewport, group.lon, group.lat);
      if (x < -50 || y < -50 || x > this.viewport.width + 50 || y > this.viewport.height + 50) continue;
      if (group.members.length > 1) {
        this.overlay.append(this.clusterMarker(doc, x, y, group.color, group.opacity, group.members.length));
      } else {
        this.overlay.append(this.itemMarker(doc, x, y, group.members[0]!));
      }
    }
  }

  private clusterMarker(
    doc: Document,
    x: number,
    y: number,
    color: string,
    opacity: number,
    count: number,
  ): SVGGElement {
    const g = svgEl(doc, "g", { class: "cluster-marker", opacity: String(opacity) });
    g.append(
      svgEl(doc, "circle", { cx: String(x), cy: String(y), r: "16", fill: color, class: "cluster-circle" }),
    );
    const label = svgEl(doc, "text", {
      x: String(x),
      y: String(y + 4),
      "text-anchor": "middle",
      class: "cluster-count",
    });
    label.textContent = String(count);
    g.append(label);
    g.addEventListener("click", () => this.zoomInto(x, y));
    return g;
  }

  private itemMarker(doc: Document, x: number, y: number, item: RenderedItem): SVGGElement {
    const g = svgEl(doc, "g", {
      class: "item-marker",
      opacity: String(item.opacity),
      "data-item-id": item.id,
      "data-opacity": String(item.opacity),
    });
    if (item.geometry.type === "polygon") {
      const points = item.geometry.coords
        .map(([lon, lat]) => lonLatToScreen(this.viewport, lon, lat).map((v) => v.toFixed(1)).join(","))
        .join(" ");
      g.append(svgEl(doc, "polygon", { points, fill: item.color, class: "item-outline" }));
    }
    const dot = svgEl(doc, "circle", {
      cx: String(x),
      cy: String(y),
      r: "7",
      fill: item.color,
      class: "item-dot",
    });
    const tip = svgEl(doc, "title");
    tip.textContent = item.display_name ?? item.id;
    dot.append(tip);
    g.append(dot);
    g.addEventListener("click", () => void this.store.selectItem(item.id));
    return g;
  }

  private zoomInto(x: number, y: number): void {
    const [lon, lat] = screenToLonLat(this.viewport, x, y);
    this.viewport.centerLon = lon;
    this.viewport.centerLat = lat;
    this.setZoom(this.viewport.zoom + 1);
  }

  /** Items whose representative point is currently on screen. */
  visibleOnScreen(): RenderedItem[] {
    return this.store.items.filter((item) => {
      const [lon, lat] = representativePoint(item.geometry);
      const [x, y] = lonLatToScreen(this.viewport, lon, lat);
      return x >= 0 && y >= 0 && x <= this.viewport.width && y <= this.viewport.height;
    });
  }
}

function mercY(lat: number): number {
  const rad = (lat * Math.PI) / 180;
  return 0.5 - Math.log(Math.tan(Math.PI / 4 + rad / 2)) / (2 * Math.PI);
}
