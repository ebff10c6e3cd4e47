/** Application entry point: top bar (category search, layout switcher),
 * widget side bar, map pane and detail panel, wired to one store. */

import { ApiClient } from "./api.js";
import { renderDetailTable } from "./detail.js";
import { MapPane } from "./map.js";
import { Sidebar } from "./sidebar.js";
import { ExplorerStore } from "./state.js";
import { WIDGET_LAYOUTS, type WidgetLayout } from "./types.js";
import { el } from "./widgets/common.js";

const TORINO = { south: 45.0, west: 7.55, north: 45.14, east: 7.8 };

function query(name: string): string | null {
  return new URLSearchParams(window.location.search).get(name);
}

export async function boot(root: HTMLElement): Promise<void> {
  const doc = root.ownerDocument;
  const apiBase = query("api") ?? "http://127.0.0.1:8000";
  const tileUrl = query("tiles") ?? "";
  const api = new ApiClient(apiBase);

  const toastBox = el(doc, "div", "toast-box");
  doc.body.append(toastBox);
  const toast = (message: string) => {
    const note = el(doc, "div", "toast", message);
    toastBox.append(note);
    setTimeout(() => note.remove(), 4000);
  };

  const store = new ExplorerStore(api, toast);

  root.replaceChildren();
  const topBar = el(doc, "header", "top-bar");
  const sidebarHost = el(doc, "aside", "sidebar");
  const mapHost = el(doc, "div", "map-host");
  const detailHost = el(doc, "div", "detail-host");
  const mainArea = el(doc, "div", "main-area");
  mainArea.append(sidebarHost, mapHost, detailHost);
  root.append(topBar, mainArea);

  new Sidebar(sidebarHost, store);
  new MapPane(mapHost, store, { tileUrl, width: mapHost.clientWidth || 900, height: mapHost.clientHeight || 640 });

  store.subscribe(() => {
    renderTopBar(doc, topBar, store);
    void renderDetail(doc, detailHost, store);
  });

  const mapId = query("map");
  if (mapId) {
    try {
      await store.load(mapId);
      return;
    } catch (error) {
      toast(`could not load map ${mapId}: ${error instanceof Error ? error.message : error}`);
    }
  }
  renderCreateForm(doc, topBar, store);
}

function renderCreateForm(doc: Document, topBar: HTMLElement, store: ExplorerStore): void {
  topBar.replaceChildren();
  const form = el(doc, "form", "create-form");
  const title = el(doc, "input") as HTMLInputElement;
  title.placeholder = "map title";
  title.value = "My map";
  const snapshot = el(doc, "input") as HTMLInputElement;
  snapshot.placeholder = "snapshot id";
  snapshot.value = "torino";
  const submit = el(doc, "button", "create-button", "Create map");
  submit.type = "submit";
  form.append(title, snapshot, submit);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void store.createMap(title.value, TORINO, snapshot.value).then((mapId) => {
      const url = new URL(window.location.href);
      url.searchParams.set("map", mapId);
      window.history.replaceState(null, "", url.toString());
    });
  });
  topBar.append(form);
}

function renderTopBar(doc: Document, topBar: HTMLElement, store: ExplorerStore): void {
  if (!store.doc) return;
  topBar.replaceChildren();

  topBar.append(el(doc, "h2", "map-title", store.doc.title));

  const search = el(doc, "div", "category-search");
  const input = el(doc, "input") as HTMLInputElement;
  input.placeholder = "search categories…";
  input.setAttribute("list", "category-options");
  const datalist = el(doc, "datalist") as HTMLDataListElement;
  datalist.id = "category-options";
  const refreshOptions = async () => {
    const matches = await store.api.categories(input.value);
    datalist.replaceChildren(
      ...matches.map((c) => {
        const option = el(doc, "option") as HTMLOptionElement;
        option.value = c.label;
        return option;
      }),
    );
  };
  input.addEventListener("input", () => void refreshOptions());
  const go = el(doc, "button", "search-button", "Search");
  go.type = "button";
  go.addEventListener("click", async () => {
    const matches = await store.api.categories(input.value);
    const match = matches.find((c) => c.label.toLowerCase() === input.value.toLowerCase()) ?? matches[0];
    if (!match) {
      store.toast(`no category matches "${input.value}"`);
      return;
    }
    input.value = "";
    await store.searchCategory(match.id);
  });
  search.append(input, datalist, go);
  topBar.append(search);

  const switcher = el(doc, "div", "layout-switcher");
  for (const layout of WIDGET_LAYOUTS) {
    const button = el(
      doc,
      "button",
      store.doc.layout === layout ? "layout-button active" : "layout-button",
      layout,
    );
    button.type = "button";
    button.dataset.layout = layout;
    button.addEventListener("click", () => void store.setLayout(layout as WidgetLayout));
    switcher.append(button);
  }
  topBar.append(switcher);
}

async function renderDetail(doc: Document, host: HTMLElement, store: ExplorerStore): Promise<void> {
  host.replaceChildren();
  if (!store.selectedItemId || !store.doc) return;
  try {
    const detail = await store.api.itemDetails(store.doc.map_id, store.selectedItemId);
    host.append(renderDetailTable(doc, detail, () => void store.selectItem(null)));
  } catch (error) {
    store.toast(`could not load item: ${error instanceof Error ? error.message : error}`);
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot(document.getElementById("app")!);
}
