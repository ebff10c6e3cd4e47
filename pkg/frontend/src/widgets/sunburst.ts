/** Sunburst widget layout.
 *
 * The inner ring holds the facets of the category; expanding a facet draws
 * its values on a second level, sorted clockwise by decreasing count and
 * sized by count. A "+" sector extends the diagram with tail values,
 * resizing the displayed arcs. The full diagram lives in a draggable
 * pop-up; the side bar shows only a thumbnail.
 */

import { paleTone } from "../color.js";
import type { WidgetPayload } from "../types.js";
import {
  el,
  remainingTail,
  selectableValues,
  svgEl,
  valueLabel,
  type WidgetContext,
} from "./common.js";

const TAU = Math.PI * 2;

/** Annular sector path; angles in radians from 12 o'clock, clockwise. */
export function sectorPath(
  cx: number,
  cy: number,
  r0: number,
  r1: number,
  a0: number,
  a1: number,
): string {
  const span = Math.min(a1 - a0, TAU - 1e-4);
  const end = a0 + span;
  const point = (r: number, a: number) => `${(cx + r * Math.sin(a)).toFixed(2)} ${(cy - r * Math.cos(a)).toFixed(2)}`;
  const large = span > Math.PI ? 1 : 0;
  return [
    `M ${point(r1, a0)}`,
    `A ${r1} ${r1} 0 ${large} 1 ${point(r1, end)}`,
    `L ${point(r0, end)}`,
    `A ${r0} ${r0} 0 ${large} 0 ${point(r0, a0)}`,
    "Z",
  ].join(" ");
}

export interface SunburstOptions {
  size?: number;
  /** Thumbnails draw the facet ring only and swallow clicks. */
  thumbnail?: boolean;
}

export function renderSunburst(
  doc: Document,
  payload: WidgetPayload,
  ctx: WidgetContext,
  options: SunburstOptions = {},
): SVGSVGElement {
  const size = options.size ?? 340;
  const thumbnail = options.thumbnail ?? false;
  const c = size / 2;
  const facetR0 = size * 0.17;
  const facetR1 = size * 0.31;
  const valueR0 = size * 0.32;
  const valueR1 = size * 0.475;

  const svg = svgEl(doc, "svg", {
    class: thumbnail ? "sunburst thumbnail" : "sunburst",
    viewBox: `0 0 ${size} ${size}`,
    width: String(size),
    height: String(size),
  });

  svg.append(
    svgEl(doc, "circle", {
      cx: String(c),
      cy: String(c),
      r: String(facetR0 - 2),
      class: "sunburst-center",
    }),
  );

  const facets = payload.facets;
  if (facets.length === 0) return svg;
  const facetSpan = TAU / facets.length;

  facets.forEach((entry, index) => {
    const a0 = index * facetSpan;
    const a1 = a0 + facetSpan;
    const expanded = !thumbnail && ctx.isExpanded(entry.facet_key);
    const facetArc = svgEl(doc, "path", {
      d: sectorPath(c, c, facetR0, facetR1, a0 + 0.008, a1 - 0.008),
      fill: ctx.color,
      class: expanded ? "sunburst-facet expanded" : "sunburst-facet",
      "data-facet-sector": entry.facet_key,
    });
    const facetTip = svgEl(doc, "title");
    facetTip.textContent = entry.facet_key;
    facetArc.append(facetTip);
    if (!thumbnail) {
      facetArc.addEventListener("click", () => ctx.onExpandToggle(entry.facet_key));
    }
    svg.append(facetArc);

    if (thumbnail) return;
    const mid = (a0 + a1) / 2;
    const labelRadius = (facetR0 + facetR1) / 2;
    if (facetSpan > 0.35) {
      const label = svgEl(doc, "text", {
        x: (c + labelRadius * Math.sin(mid)).toFixed(2),
        y: (c - labelRadius * Math.cos(mid)).toFixed(2),
        class: "sunburst-facet-label",
        "text-anchor": "middle",
      });
      label.textContent = entry.facet_key.length > 14 ? entry.facet_key.slice(0, 13) + "…" : entry.facet_key;
      svg.append(label);
    }

    if (!expanded) return;
    const values = selectableValues(entry, ctx.revealed(entry.facet_key));
    const tail = remainingTail(entry, ctx.revealed(entry.facet_key));
    const total = values.reduce((sum, v) => sum + v.count, 0);
    if (total === 0) return;
    // reserve a small fixed share of the span for the "+" extender
    const plusShare = tail > 0 ? 0.08 : 0;
    const usable = facetSpan * (1 - plusShare) - 0.016;
    let cursor = a0 + 0.008;
    for (const v of values) {
      const span = (v.count / total) * usable;
      const selected = ctx.isSelected(v.facet, v.value);
      const arc = svgEl(doc, "path", {
        d: sectorPath(c, c, valueR0, valueR1, cursor, cursor + Math.max(span, 0.004)),
        fill: selected ? ctx.color : paleTone(ctx.color),
        class: selected ? "sunburst-value selected" : "sunburst-value",
        "data-facet": v.facet,
        "data-value": v.value,
      });
      const tip = svgEl(doc, "title");
      tip.textContent = valueLabel(v);
      arc.append(tip);
      arc.addEventListener("click", () => ctx.onToggle(v.facet, v.value));
      svg.append(arc);
      cursor += Math.max(span, 0.004);
    }
    if (tail > 0) {
      const plus = svgEl(doc, "path", {
        d: sectorPath(c, c, valueR0, valueR1, cursor, a1 - 0.008),
        class: "sunburst-plus",
        fill: "#e8e8e8",
        "data-plus": entry.facet_key,
      });
      const tip = svgEl(doc, "title");
      tip.textContent = `show ${tail} more values`;
      plus.append(tip);
      plus.addEventListener("click", () => ctx.onShowMore(entry.facet_key));
      svg.append(plus);
      const mark = svgEl(doc, "text", {
        x: (c + ((valueR0 + valueR1) / 2) * Math.sin(a1 - 0.02 - (a1 - 0.008 - cursor) / 2)).toFixed(2),
        y: (c - ((valueR0 + valueR1) / 2) * Math.cos(a1 - 0.02 - (a1 - 0.008 - cursor) / 2)).toFixed(2),
        class: "sunburst-plus-mark",
        "text-anchor": "middle",
      });
      mark.textContent = "+";
      svg.append(mark);
    }
  });

  const centerLabel = svgEl(doc, "text", {
    x: String(c),
    y: String(c + 4),
    class: "sunburst-center-label",
    "text-anchor": "middle",
  });
  centerLabel.textContent = payload.category_id;
  svg.append(centerLabel);
  return svg;
}

export interface PopupHandle {
  element: HTMLElement;
  close(): void;
}

/**
 * Open the full sunburst in a draggable pop-up over the map. The pop-up
 * re-renders itself through `rerender` whenever the caller asks; dragging
 * state survives re-renders because only the diagram is replaced.
 */
export function openSunburstPopup(
  doc: Document,
  title: string,
  render: () => SVGSVGElement,
  onClose: () => void,
): PopupHandle {
  const popup = el(doc, "div", "sunburst-popup");
  const header = el(doc, "div", "sunburst-popup-header");
  header.append(el(doc, "span", "sunburst-popup-title", title));
  const close = el(doc, "button", "sunburst-popup-close", "×");
  close.type = "button";
  header.append(close);
  const body = el(doc, "div", "sunburst-popup-body");
  body.append(render());
  popup.append(header, body);
  doc.body.append(popup);

  let dragging = false;
  let startX = 0;
  let startY = 0;
  let baseLeft = 0;
  let baseTop = 0;
  header.addEventListener("pointerdown", (event) => {
    dragging = true;
    startX = event.clientX;
    startY = event.clientY;
    baseLeft = popup.offsetLeft;
    baseTop = popup.offsetTop;
  });
  doc.addEventListener("pointermove", (event) => {
    if (!dragging) return;
    popup.style.left = `${baseLeft + event.clientX - startX}px`;
    popup.style.top = `${baseTop + event.clientY - startY}px`;
  });
  doc.addEventListener("pointerup", () => {
    dragging = false;
  });

  const handle: PopupHandle = {
    element: popup,
    close() {
      popup.remove();
      onClose();
    },
  };
  close.addEventListener("click", () => handle.close());
  (popup as HTMLElement & { rerender?: () => void }).rerender = () => {
    body.replaceChildren(render());
  };
  return handle;
}

export function rerenderPopup(handle: PopupHandle): void {
  const fn = (handle.element as HTMLElement & { rerender?: () => void }).rerender;
  if (fn) fn();
}
