/** Side bar of per-category widgets, in search order (breadcrumbs).
 *
 * Every widget card carries a transparency slider and a hide checkbox; a
 * collapsed card shows only the slider. The facet component below follows
 * the map's active layout.
 */

import type { ExplorerStore } from "./state.js";
import type { WidgetPayload } from "./types.js";
import { renderCheckboxes } from "./widgets/checkboxes.js";
import { el, type WidgetContext } from "./widgets/common.js";
import { openSunburstPopup, rerenderPopup, renderSunburst, type PopupHandle } from "./widgets/sunburst.js";
import { renderTreemap } from "./widgets/treemap.js";

const FALLBACK_COLOR = "#888888";

export function widgetContext(store: ExplorerStore, categoryId: string): WidgetContext {
  return {
    categoryId,
    color: store.categoryRecord(categoryId)?.color ?? FALLBACK_COLOR,
    isSelected: (facet, value) => store.isSelected(categoryId, facet, value),
    isExpanded: (facet) => store.isFacetExpanded(categoryId, facet),
    revealed: (facet) => store.revealedCount(categoryId, facet),
    onToggle: (facet, value) => void store.toggleValue(categoryId, facet, value),
    onExpandToggle: (facet) => store.toggleFacetExpanded(categoryId, facet),
    onShowMore: (facet) => store.showMore(categoryId, facet),
  };
}

export class Sidebar {
  private popups = new Map<string, PopupHandle>();

  constructor(
    private readonly container: HTMLElement,
    private readonly store: ExplorerStore,
  ) {
    store.subscribe(() => this.render());
  }

  render(): void {
    const doc = this.container.ownerDocument;
    this.container.replaceChildren();
    const map = this.store.doc;
    if (!map) return;

    for (const categoryId of map.projection.searched) {
      const payload = this.store.widgets.get(categoryId);
      if (!payload) continue;
      this.container.append(this.renderCard(doc, categoryId, payload));
    }
    for (const [categoryId, handle] of this.popups) {
      if (map.projection.searched.includes(categoryId) && map.layout === "sunburst") {
        rerenderPopup(handle);
      } else {
        handle.close();
      }
    }
  }

  private renderCard(doc: Document, categoryId: string, payload: WidgetPayload): HTMLElement {
    const store = this.store;
    const map = store.doc!;
    const record = store.categoryRecord(categoryId);
    const color = record?.color ?? FALLBACK_COLOR;
    const projection = map.projection.categories[categoryId];
    const collapsed = store.isWidgetCollapsed(categoryId);

    const card = el(doc, "section", "widget-card");
    card.dataset.category = categoryId;

    const header = el(doc, "header", "widget-header");
    const swatch = el(doc, "span", "category-swatch");
    swatch.style.background = color;
    const title = el(doc, "h3", "widget-title", record?.label ?? categoryId);
    const collapseBtn = el(doc, "button", "widget-collapse", collapsed ? "▸" : "▾");
    collapseBtn.type = "button";
    collapseBtn.title = collapsed ? "open widget" : "close widget";
    collapseBtn.addEventListener("click", () => store.toggleWidgetCollapsed(categoryId));
    const removeBtn = el(doc, "button", "widget-remove", "×");
    removeBtn.type = "button";
    removeBtn.title = "remove category from the side bar";
    removeBtn.addEventListener("click", () => void store.removeCategory(categoryId));
    header.append(swatch, title, collapseBtn, removeBtn);
    card.append(header);

    // the slider row is always present, even on a collapsed widget
    const sliderRow = el(doc, "div", "slider-row");
    const slider = el(doc, "input", "opacity-slider") as HTMLInputElement;
    slider.type = "range";
    slider.min = "0";
    slider.max = "1";
    slider.step = "0.05";
    slider.value = String(projection?.opacity ?? 1);
    slider.title = "opacity";
    slider.addEventListener("change", () => void store.setOpacity(categoryId, Number(slider.value)));
    const hideLabel = el(doc, "label", "hide-toggle");
    const hideBox = el(doc, "input") as HTMLInputElement;
    hideBox.type = "checkbox";
    hideBox.className = "hide-checkbox";
    hideBox.checked = projection?.hidden ?? false;
    hideBox.addEventListener("change", () => void store.setHidden(categoryId, hideBox.checked));
    hideLabel.append(hideBox, doc.createTextNode(" hide"));
    sliderRow.append(slider, hideLabel);
    card.append(sliderRow);

    if (collapsed) return card;

    const ctx = widgetContext(store, categoryId);
    switch (map.layout) {
      case "checkboxes":
        card.append(renderCheckboxes(doc, payload, ctx));
        break;
      case "treemap":
        card.append(renderTreemap(doc, payload, ctx));
        break;
      case "sunburst": {
        const thumbWrap = el(doc, "button", "sunburst-thumb-button");
        thumbWrap.type = "button";
        thumbWrap.title = "open the sunburst diagram";
        thumbWrap.append(renderSunburst(doc, payload, ctx, { size: 72, thumbnail: true }));
        thumbWrap.addEventListener("click", () => this.openPopup(doc, categoryId));
        card.append(thumbWrap);
        break;
      }
      case "sliders-only":
        break;
    }
    return card;
  }

  openPopup(doc: Document, categoryId: string): void {
    if (this.popups.has(categoryId)) return;
    const record = this.store.categoryRecord(categoryId);
    const handle = openSunburstPopup(
      doc,
      record?.label ?? categoryId,
      () => {
        const payload = this.store.widgets.get(categoryId);
        return renderSunburst(doc, payload ?? { category_id: categoryId, facets: [] }, widgetContext(this.store, categoryId));
      },
      () => this.popups.delete(categoryId),
    );
    this.popups.set(categoryId, handle);
  }
}
