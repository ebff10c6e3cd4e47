/** Treemap widget layout: an expanded facet shows its values as rectangles
 * whose area is proportional to the item count. Selected values take the
 * category color, unselected ones a pale tone; long values are shortened
 * and shown in full on mouse over. */

import { paleTone } from "../color.js";
import type { WidgetPayload } from "../types.js";
import {
  el,
  remainingTail,
  selectableValues,
  svgEl,
  valueLabel,
  type SelectableValue,
  type WidgetContext,
} from "./common.js";

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

/**
 * Weighted binary-split treemap: the value list is split into two runs of
 * nearly equal total weight, the rectangle is split along its longer side
 * in the same proportion, and both halves recurse. Areas come out exactly
 * proportional to the weights.
 */
export function layoutTreemap(weights: number[], bounds: Rect): Rect[] {
  if (weights.length === 0) return [];
  if (weights.length === 1) return [bounds];
  const total = weights.reduce((a, b) => a + b, 0);
  if (total <= 0) {
    // degenerate: equal slices
    return weights.map((_, i) => ({
      x: bounds.x + (bounds.w * i) / weights.length,
      y: bounds.y,
      w: bounds.w / weights.length,
      h: bounds.h,
    }));
  }
  let splitIndex = 1;
  let acc = weights[0]!;
  while (splitIndex < weights.length - 1 && acc + weights[splitIndex]! <= total / 2) {
    acc += weights[splitIndex]!;
    splitIndex += 1;
  }
  const ratio = acc / total;
  let first: Rect, second: Rect;
  if (bounds.w >= bounds.h) {
    first = { ...bounds, w: bounds.w * ratio };
    second = { x: bounds.x + bounds.w * ratio, y: bounds.y, w: bounds.w * (1 - ratio), h: bounds.h };
  } else {
    first = { ...bounds, h: bounds.h * ratio };
    second = { x: bounds.x, y: bounds.y + bounds.h * ratio, w: bounds.w, h: bounds.h * (1 - ratio) };
  }
  return [
    ...layoutTreemap(weights.slice(0, splitIndex), first),
    ...layoutTreemap(weights.slice(splitIndex), second),
  ];
}

const MAP_WIDTH = 280;
const MAP_HEIGHT = 150;

export function renderTreemap(doc: Document, payload: WidgetPayload, ctx: WidgetContext): HTMLElement {
  const root = el(doc, "div", "facet-list layout-treemap");
  for (const entry of payload.facets) {
    const box = el(doc, "div", "facet-box");
    box.dataset.facet = entry.facet_key;

    const header = el(doc, "button", "facet-header");
    header.type = "button";
    header.append(
      el(doc, "span", "facet-name", entry.facet_key),
      el(doc, "span", "facet-caret", ctx.isExpanded(entry.facet_key) ? "▾" : "▸"),
    );
    header.addEventListener("click", () => ctx.onExpandToggle(entry.facet_key));
    box.append(header);

    if (ctx.isExpanded(entry.facet_key)) {
      const values = selectableValues(entry, ctx.revealed(entry.facet_key));
      box.append(buildSvg(doc, values, ctx));
      const remaining = remainingTail(entry, ctx.revealed(entry.facet_key));
      if (remaining > 0) {
        const more = el(doc, "button", "more-link", `More... (${remaining})`);
        more.type = "button";
        more.addEventListener("click", () => ctx.onShowMore(entry.facet_key));
        box.append(more);
      }
    }
    root.append(box);
  }
  return root;
}

function buildSvg(doc: Document, values: SelectableValue[], ctx: WidgetContext): SVGSVGElement {
  const svg = svgEl(doc, "svg", {
    class: "treemap",
    viewBox: `0 0 ${MAP_WIDTH} ${MAP_HEIGHT}`,
    width: String(MAP_WIDTH),
    height: String(MAP_HEIGHT),
  });
  const rects = layoutTreemap(
    values.map((v) => v.count),
    { x: 0, y: 0, w: MAP_WIDTH, h: MAP_HEIGHT },
  );
  values.forEach((v, i) => {
    const r = rects[i]!;
    const selected = ctx.isSelected(v.facet, v.value);
    const group = svgEl(doc, "g", { class: "treemap-cell" });
    const rect = svgEl(doc, "rect", {
      x: r.x.toFixed(2),
      y: r.y.toFixed(2),
      width: Math.max(0, r.w - 1).toFixed(2),
      height: Math.max(0, r.h - 1).toFixed(2),
      fill: selected ? ctx.color : paleTone(ctx.color),
      "data-facet": v.facet,
      "data-value": v.value,
      rx: "2",
    });
    rect.addEventListener("click", () => ctx.onToggle(v.facet, v.value));
    const tooltip = svgEl(doc, "title");
    tooltip.textContent = valueLabel(v);
    rect.append(tooltip);
    group.append(rect);
    if (r.w > 40 && r.h > 14) {
      const label = svgEl(doc, "text", {
        x: (r.x + 4).toFixed(2),
        y: (r.y + 13).toFixed(2),
        class: selected ? "treemap-label selected" : "treemap-label",
      });
      const shortened = v.value.length > Math.floor(r.w / 7) ? v.value.slice(0, Math.floor(r.w / 7)) + "…" : v.value;
      label.textContent = shortened;
      group.append(label);
    }
    svg.append(group);
  });
  return svg;
}
