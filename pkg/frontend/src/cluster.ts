/** Radius-based per-category clustering of rendered items.
 *
 * Items of one category closer than the pixel radius at the current zoom
 * group into a cluster carrying the category color and a member count;
 * zooming in spreads them apart until clusters dissolve.
 */

import { lonLatToWorld, worldScale } from "./mercator.js";
import { representativePoint, type RenderedItem } from "./types.js";

export interface ClusterGroup {
  category: string;
  color: string;
  /** Mean position of the members. */
  lon: number;
  lat: number;
  members: RenderedItem[];
  /** Mean opacity of the members (category opacity in practice). */
  opacity: number;
}

export const DEFAULT_CLUSTER_RADIUS_PX = 42;

export function clusterItems(
  items: RenderedItem[],
  zoom: number,
  radiusPx: number = DEFAULT_CLUSTER_RADIUS_PX,
): ClusterGroup[] {
  const scale = worldScale(zoom);
  const groups: (ClusterGroup & { wx: number; wy: number })[] = [];
  for (const item of items) {
    const [lon, lat] = representativePoint(item.geometry);
    const [wx, wy] = lonLatToWorld(lon, lat);
    let target: (typeof groups)[number] | undefined;
    for (const group of groups) {
      if (group.category !== item.category) continue;
      const dx = (group.wx - wx) * scale;
      const dy = (group.wy - wy) * scale;
      if (dx * dx + dy * dy <= radiusPx * radiusPx) {
        target = group;
        break;
      }
    }
    if (target === undefined) {
      groups.push({
        category: item.category,
        color: item.color,
        lon,
        lat,
        members: [item],
        opacity: item.opacity,
        wx,
        wy,
      });
    } else {
      const n = target.members.length;
      target.members.push(item);
      // running means keep the cluster anchored among its members
      target.lon = (target.lon * n + lon) / (n + 1);
      target.lat = (target.lat * n + lat) / (n + 1);
      target.opacity = (target.opacity * n + item.opacity) / (n + 1);
      const [nwx, nwy] = lonLatToWorld(target.lon, target.lat);
      target.wx = nwx;
      target.wy = nwy;
    }
  }
  return groups.map(({ wx: _wx, wy: _wy, ...group }) => group);
}
