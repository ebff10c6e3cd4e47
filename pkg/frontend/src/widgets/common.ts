/** Shared widget machinery.
 *
 * Every layout derives its clickable (facet, value) pairs from
 * `selectableValues`, so switching layouts changes presentation only,
 * never the set of selectable constraints.
 */

import { NOT_SPECIFIED, type FacetEntry } from "../types.js";

export interface SelectableValue {
  facet: string;
  value: string;
  count: number;
  isNotSpecified: boolean;
}

export interface WidgetContext {
  categoryId: string;
  color: string;
  isSelected(facet: string, value: string): boolean;
  isExpanded(facet: string): boolean;
  /** How many tail values have been revealed on demand. */
  revealed(facet: string): number;
  onToggle(facet: string, value: string): void;
  onExpandToggle(facet: string): void;
  onShowMore(facet: string): void;
}

/**
 * The values a widget offers for one facet: the payload's visible list,
 * any tail values revealed on demand, and the NOT SPECIFIED remainder,
 * sorted by decreasing count (ties by value string).
 */
export function selectableValues(entry: FacetEntry, revealed: number): SelectableValue[] {
  const out: SelectableValue[] = [];
  for (const v of entry.values) {
    out.push({ facet: entry.facet_key, value: v.value, count: v.count, isNotSpecified: false });
  }
  for (const v of entry.hidden_tail.slice(0, revealed)) {
    out.push({ facet: entry.facet_key, value: v.value, count: v.count, isNotSpecified: false });
  }
  if (entry.not_specified_count > 0) {
    out.push({
      facet: entry.facet_key,
      value: NOT_SPECIFIED,
      count: entry.not_specified_count,
      isNotSpecified: true,
    });
  }
  out.sort((a, b) => b.count - a.count || (a.value < b.value ? -1 : a.value > b.value ? 1 : 0));
  return out;
}

export function remainingTail(entry: FacetEntry, revealed: number): number {
  return Math.max(0, entry.hidden_tail.length - revealed);
}

/** Count label shown next to a value, e.g. "YES (62)". */
export function valueLabel(v: SelectableValue): string {
  return `${v.value} (${v.count})`;
}

export function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export const SVG_NS = "http://www.w3.org/2000/svg";

export function svgEl<K extends keyof SVGElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const node = doc.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}
