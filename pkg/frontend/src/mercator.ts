/** Web-Mercator math for the slippy map pane. */

import type { BBox } from "./types.js";

export const TILE_SIZE = 256;

/** Longitude/latitude to world coordinates in [0, 1). */
export function lonLatToWorld(lon: number, lat: number): [number, number] {
  const x = (lon + 180) / 360;
  const rad = (lat * Math.PI) / 180;
  const y = 0.5 - Math.log(Math.tan(Math.PI / 4 + rad / 2)) / (2 * Math.PI);
  return [x, y];
}

export function worldToLonLat(x: number, y: number): [number, number] {
  const lon = x * 360 - 180;
  const lat = ((Math.atan(Math.exp((0.5 - y) * 2 * Math.PI)) - Math.PI / 4) * 2 * 180) / Math.PI;
  return [lon, lat];
}

export interface Viewport {
  centerLon: number;
  centerLat: number;
  zoom: number;
  width: number;
  height: number;
}

export function worldScale(zoom: number): number {
  return TILE_SIZE * 2 ** zoom;
}

export function lonLatToScreen(vp: Viewport, lon: number, lat: number): [number, number] {
  const scale = worldScale(vp.zoom);
  const [wx, wy] = lonLatToWorld(lon, lat);
  const [cx, cy] = lonLatToWorld(vp.centerLon, vp.centerLat);
  return [vp.width / 2 + (wx - cx) * scale, vp.height / 2 + (wy - cy) * scale];
}

export function screenToLonLat(vp: Viewport, px: number, py: number): [number, number] {
  const scale = worldScale(vp.zoom);
  const [cx, cy] = lonLatToWorld(vp.centerLon, vp.centerLat);
  return worldToLonLat(cx + (px - vp.width / 2) / scale, cy + (py - vp.height / 2) / scale);
}

/** Viewport centered on a bbox at the largest integer zoom that fits it. */
export function fitBBox(bbox: BBox, width: number, height: number): Viewport {
  const [west, north] = lonLatToWorld(bbox.west, bbox.north);
  const [east, south] = lonLatToWorld(bbox.east, bbox.south);
  const spanX = Math.abs(east - west);
  const spanY = Math.abs(south - north);
  let zoom = 18;
  while (zoom > 1 && (spanX * worldScale(zoom) > width || spanY * worldScale(zoom) > height)) {
    zoom -= 1;
  }
  return {
    centerLon: (bbox.west + bbox.east) / 2,
    centerLat: (bbox.south + bbox.north) / 2,
    zoom,
    width,
    height,
  };
}
