/** Checkbox widget layout: one rimmed box per facet, values as checkboxes,
 * a "More..." link revealing the hidden tail. */

import type { WidgetPayload } from "../types.js";
import { el, remainingTail, selectableValues, valueLabel, type WidgetContext } from "./common.js";

export function renderCheckboxes(doc: Document, payload: WidgetPayload, ctx: WidgetContext): HTMLElement {
  const root = el(doc, "div", "facet-list layout-checkboxes");
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
      const list = el(doc, "ul", "value-list");
      for (const v of selectableValues(entry, ctx.revealed(entry.facet_key))) {
        const item = el(doc, "li", v.isNotSpecified ? "value-row not-specified" : "value-row");
        const label = el(doc, "label");
        const input = el(doc, "input") as HTMLInputElement;
        input.type = "checkbox";
        input.checked = ctx.isSelected(v.facet, v.value);
        input.dataset.facet = v.facet;
        input.dataset.value = v.value;
        input.addEventListener("change", () => ctx.onToggle(v.facet, v.value));
        label.append(input, doc.createTextNode(" " + valueLabel(v)));
        item.append(label);
        list.append(item);
      }
      box.append(list);
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
