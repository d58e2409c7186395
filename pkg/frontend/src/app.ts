// Application wiring: settings -> graph metadata -> map + panel, then a
// debounced query loop. Any change to the query inputs (endpoints, detour
// weights, search radius) schedules one request 300 ms after the last edit;
// selection and list sorting re-render locally without touching the network.

import { ApiClient, ApiError } from "./api.js";
import { debounce } from "./debounce.js";
import { SlippyMap } from "./map.js";
import { fitBounds } from "./mercator.js";
import { Panel } from "./panel.js";
import { renderRoutes } from "./routeLayer.js";
import { findByKey, sortAndFilter, vectorKey } from "./routes.js";
import type { SortKey } from "./routes.js";
import { QueryStore } from "./state.js";
import type { GraphMeta, LatLon, RoutesResponse, Settings } from "./types.js";
import { DEFAULT_SETTINGS } from "./types.js";

export const QUERY_DEBOUNCE_MS = 300;

export type BootstrapOptions = {
  settingsUrl?: string;
  fetchFn?: typeof fetch;
};

export type App = {
  settings: Settings;
  meta: GraphMeta;
  store: QueryStore;
  map: SlippyMap;
  panel: Panel;
  /** Bypass the debounce; used by the retry button. */
  refresh: () => Promise<void>;
};

async function loadSettings(fetchFn: typeof fetch, url: string): Promise<Settings> {
  try {
    const response = await fetchFn(url);
    if (!response.ok) return DEFAULT_SETTINGS;
    const overrides = (await response.json()) as Partial<Settings>;
    return { ...DEFAULT_SETTINGS, ...overrides };
  } catch {
    return DEFAULT_SETTINGS;
  }
}

export async function bootstrap(root: HTMLElement, options: BootstrapOptions = {}): Promise<App> {
  const fetchFn = options.fetchFn ?? ((...args: Parameters<typeof fetch>) => fetch(...args));
  const settings = await loadSettings(fetchFn, options.settingsUrl ?? "./settings.json");
  const api = new ApiClient(fetchFn);

  let meta: GraphMeta;
  try {
    meta = await api.fetchMeta();
  } catch (error) {
    const message = document.createElement("p");
    message.className = "fatal";
    message.textContent = `route service unavailable: ${(error as Error).message}`;
    root.replaceChildren(message);
    throw error;
  }

  root.classList.add("app");
  const mapEl = document.createElement("div");
  mapEl.id = "map";
  const panelEl = document.createElement("div");
  panelEl.id = "panel";
  root.replaceChildren(mapEl, panelEl);

  const store = new QueryStore(meta.K, settings.defaultBboxDist);
  let response: RoutesResponse | null = null;
  let sort: SortKey = { kind: "length" };
  let maxLengthM: number | null = null;

  const map = new SlippyMap(mapEl, {
    tileUrl: settings.tileUrl,
    attribution: settings.attribution,
    onPick: (point: LatLon) => {
      if (store.get().start === null) store.setStart(point);
      else if (store.get().end === null) store.setEnd(point);
      else store.setEnd(point);
    },
    onMarkerMove: (name, point) => {
      if (name === "start") store.setStart(point);
      else store.setEnd(point);
    },
    onViewChange: () => drawOverlay(),
  });

  const panel = new Panel(panelEl, meta, settings.listCap, {
    onWeightInput: (index, value) => store.setWeight(index, value),
    onBboxDistInput: (meters) => store.setBboxDist(meters),
    onSortChange: (key) => {
      sort = key;
      drawPanel();
    },
    onMaxLengthChange: (meters) => {
      maxLengthM = meters;
      drawPanel();
    },
    onSelect: (key) => store.select(key),
    onRetry: () => void runQuery(),
  });

  function drawOverlay(): void {
    renderRoutes(map, response?.routes.features ?? [], {
      colors: meta.colors,
      selectedKey: store.get().selectedKey,
      onSelect: (feature) => store.select(vectorKey(feature.properties.unweighted_cost)),
    });
  }

  function drawPanel(): void {
    if (response === null) {
      panel.showIdleHint();
      return;
    }
    const visible = sortAndFilter(response.routes.features, sort, maxLengthM);
    panel.showRoutes(response, visible, store.get().selectedKey);
  }

  function drawMarkers(): void {
    const state = store.get();
    if (state.start) map.setMarker("start", state.start);
    if (state.end) map.setMarker("end", state.end);
  }

  async function runQuery(): Promise<void> {
    if (!store.ready()) return;
    const state = store.get();
    try {
      const fresh = await api.fetchRoutes(state.start!, state.end!, state.weights, state.bboxDist);
      if (fresh === null) return; // a newer request superseded this one
      response = fresh;
      if (findByKey(fresh.routes.features, store.get().selectedKey) === null) {
        store.select(null); // triggers a redraw below
      }
      drawPanel();
      drawOverlay();
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) {
        panel.markWeightsInvalid(true);
        panel.showError(`rejected query: ${error.message}`, false);
      } else if (error instanceof ApiError && error.status === 503) {
        panel.showError("routing budget exceeded; move the points closer together", true);
      } else if (error instanceof ApiError) {
        panel.showError(`route service error ${error.status}: ${error.message}`, true);
      } else {
        panel.showError(`network error: ${(error as Error).message}`, true);
      }
    }
  }

  const scheduleQuery = debounce(() => void runQuery(), QUERY_DEBOUNCE_MS);
  let lastQueryKey = "";

  store.subscribe((state) => {
    drawMarkers();
    const queryKey = JSON.stringify([state.start, state.end, state.weights, state.bboxDist]);
    if (queryKey !== lastQueryKey) {
      lastQueryKey = queryKey;
      if (store.ready()) scheduleQuery();
    } else {
      // selection or cosmetic change only
      drawPanel();
      drawOverlay();
    }
  });

  const fit = fitBounds(meta.bbox, mapEl.clientWidth || 800, mapEl.clientHeight || 600);
  map.setView(fit.center, fit.zoom);
  panel.showIdleHint();

  return { settings, meta, store, map, panel, refresh: runQuery };
}
