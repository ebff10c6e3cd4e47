/** Item detail table. Rows whose facet is a selected visualization
 * constraint are highlighted in the category color. */

import { paleTone } from "./color.js";
import type { DetailTable } from "./types.js";
import { el } from "./widgets/common.js";

export function renderDetailTable(doc: Document, detail: DetailTable, onClose: () => void): HTMLElement {
  const panel = el(doc, "div", "detail-panel");
  const header = el(doc, "header", "detail-header");
  header.style.borderColor = detail.color;
  header.append(el(doc, "h3", "detail-title", detail.display_name ?? detail.item_id));
  const close = el(doc, "button", "detail-close", "×");
  close.type = "button";
  close.addEventListener("click", onClose);
  header.append(close);
  panel.append(header);

  const table = el(doc, "table", "detail-table");
  const body = el(doc, "tbody");
  for (const row of detail.rows) {
    const tr = el(doc, "tr", row.highlighted ? "detail-row highlighted" : "detail-row");
    if (row.highlighted) {
      tr.style.background = paleTone(detail.color);
      tr.style.borderLeft = `4px solid ${detail.color}`;
    }
    tr.append(el(doc, "td", "detail-facet", row.facet), el(doc, "td", "detail-value", row.value));
    body.append(tr);
  }
  table.append(body);
  panel.append(table);
  return panel;
}
