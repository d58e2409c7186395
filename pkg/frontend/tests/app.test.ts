import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { QUERY_DEBOUNCE_MS, bootstrap } from "../src/app.js";
import type { BootstrapOptions } from "../src/app.js";
import { FakeElement, FakeEvent, installDom, makeRoot } from "./helpers/dom.js";
import {
  DIAMOND_META,
  EMPTY_RESPONSE,
  END,
  START,
  fixtureService,
  jsonResponse,
} from "./fixtures/diamond.js";

beforeEach(() => {
  installDom();
  vi.useFakeTimers();
});

afterEach(() => {
  vi.useRealTimers();
});

/** Drain the microtask chain of a resolved mock fetch. */
async function flush(): Promise<void> {
  for (let i = 0; i < 20; i++) await Promise.resolve();
}

async function idle(): Promise<void> {
  await vi.advanceTimersByTimeAsync(QUERY_DEBOUNCE_MS);
  await flush();
}

function q(root: HTMLElement, selector: string): FakeElement {
  const found = (root as unknown as FakeElement).querySelector(selector);
  if (!found) throw new Error(`nothing matches ${selector}`);
  return found;
}

async function boot(
  serviceOptions: Parameters<typeof fixtureService>[0] = {},
  bootstrapOptions: Omit<BootstrapOptions, "fetchFn"> = {},
) {
  const { fetchFn, requests } = fixtureService(serviceOptions);
  const root = makeRoot();
  const app = await bootstrap(root, { ...bootstrapOptions, fetchFn });
  return { root, app, requests };
}

describe("ui loop", () => {
  it("endpoint picks and a weight drag to 4 shrink the badge 2 -> 1, one request per idle", async () => {
    const { root, app, requests } = await boot();
    const badge = q(root, "#route-count");
    expect(badge.textContent).toBe("0");

    // set both endpoints by clicking the map
    const mapEl = q(root, "#map");
    mapEl.dispatchEvent(new FakeEvent("mousedown", { clientX: 300, clientY: 350 }));
    mapEl.dispatchEvent(new FakeEvent("mouseup", { clientX: 300, clientY: 350 }));
    mapEl.dispatchEvent(new FakeEvent("mousedown", { clientX: 500, clientY: 250 }));
    mapEl.dispatchEvent(new FakeEvent("mouseup", { clientX: 500, clientY: 250 }));
    expect(app.store.ready()).toBe(true);
    expect(root.querySelectorAll(".marker")).toHaveLength(2);
    expect(requests).toHaveLength(0);

    await idle();
    expect(requests).toHaveLength(1);
    expect(requests[0].body.weights).toEqual([1]);
    expect(badge.textContent).toBe("2");
    expect(root.querySelectorAll(".route-entry")).toHaveLength(2);

    // category colors follow the metadata order, in the legend and on the map
    const swatchColors = Array.from(
      (root as unknown as FakeElement).querySelectorAll("#legend .swatch"),
      (s) => s.dataset.color,
    );
    expect(swatchColors).toEqual(DIAMOND_META.colors);
    const mixedRoute = q(root, ".route-overlay .route");
    const strokes = mixedRoute.querySelectorAll("polyline").map((p) => p.getAttribute("stroke"));
    expect(strokes).toEqual(DIAMOND_META.colors);

    // drag the single detour-weight slider 2 -> 3 -> 4 within one idle window
    const slider = q(root, ".weight-slider");
    for (const value of ["2", "3", "4"]) {
      slider.value = value;
      slider.dispatchEvent(new FakeEvent("input"));
      await vi.advanceTimersByTimeAsync(50);
    }
    await idle();

    expect(requests).toHaveLength(2); // the drag collapsed into one request
    expect(requests[1].body.weights).toEqual([4]);
    expect(badge.textContent).toBe("1");
    expect(root.querySelectorAll(".route-entry")).toHaveLength(1);
    expect(root.querySelectorAll(".route-overlay .route")).toHaveLength(1);
  });

  it("third click moves the destination", async () => {
    const { root, app } = await boot();
    const mapEl = q(root, "#map");
    for (const x of [300, 500, 600]) {
      mapEl.dispatchEvent(new FakeEvent("mousedown", { clientX: x, clientY: 300 }));
      mapEl.dispatchEvent(new FakeEvent("mouseup", { clientX: x, clientY: 300 }));
    }
    const state = app.store.get();
    expect(state.start!.lon).toBeLessThan(state.end!.lon);
    expect(app.map.toPixel(state.end!).x).toBeCloseTo(600, 6);
  });

  it("changing the search radius re-queries with bbox_dist", async () => {
    const { root, app, requests } = await boot();
    app.store.setStart(START);
    app.store.setEnd(END);
    await idle();
    expect(requests).toHaveLength(1);
    expect(requests[0].body).not.toHaveProperty("bbox_dist");

    const bbox = q(root, "#bbox-dist");
    bbox.value = "1500";
    bbox.dispatchEvent(new FakeEvent("change"));
    await idle();
    expect(requests).toHaveLength(2);
    expect(requests[1].body.bbox_dist).toBe(1500);
  });
});

describe("selection across re-queries", () => {
  async function bootWithRoutes() {
    const booted = await boot();
    booted.app.store.setStart(START);
    booted.app.store.setEnd(END);
    await idle();
    return booted;
  }

  function dragTo(root: HTMLElement, value: string): void {
    const slider = q(root, ".weight-slider");
    slider.value = value;
    slider.dispatchEvent(new FakeEvent("input"));
  }

  it("keeps the selection when its vector survives", async () => {
    const { root, app } = await bootWithRoutes();
    const entries = (root as unknown as FakeElement).querySelectorAll(".route-entry");
    entries[1].dispatchEvent(new FakeEvent("click"));
    expect(app.store.get().selectedKey).toBe("300,0");

    dragTo(root, "4");
    await idle();
    expect(app.store.get().selectedKey).toBe("300,0");
    expect(q(root, ".route-entry").classList.contains("selected")).toBe(true);
    expect(q(root, ".route-overlay .route").classList.contains("route-selected")).toBe(true);
  });

  it("clears the selection when its vector vanishes", async () => {
    const { root, app } = await bootWithRoutes();
    (root as unknown as FakeElement).querySelectorAll(".route-entry")[0].dispatchEvent(
      new FakeEvent("click"),
    );
    expect(app.store.get().selectedKey).toBe("200,100");

    dragTo(root, "4");
    await idle();
    expect(app.store.get().selectedKey).toBeNull();
    expect(q(root, ".route-entry").classList.contains("selected")).toBe(false);
  });
});

describe("error and edge surfaces", () => {
  it("maps a 422 to the slider error state without a retry button", async () => {
    const { root, app } = await boot({ failRoutes: 422 });
    app.store.setStart(START);
    app.store.setEnd(END);
    await idle();

    expect(q(root, ".weights").classList.contains("invalid")).toBe(true);
    const toast = q(root, "#toast");
    expect(toast.hidden).toBe(false);
    expect(toast.textContent).toContain("rejected query");
    expect((root as unknown as FakeElement).querySelector("#retry")).toBeNull();
    expect(q(root, "#route-count").textContent).toBe("0");
  });

  it("offers a retry after a network failure, and the retry recovers", async () => {
    const healthy = fixtureService();
    let failures = 1;
    const fetchFn = (async (url: unknown, init?: unknown) => {
      if (String(url).endsWith("/api/routes") && failures > 0) {
        failures--;
        throw new TypeError("fetch failed");
      }
      return (healthy.fetchFn as unknown as (u: unknown, i?: unknown) => unknown)(url, init);
    }) as unknown as typeof fetch;

    const root = makeRoot();
    const app = await bootstrap(root, { fetchFn });
    app.store.setStart(START);
    app.store.setEnd(END);
    await idle();

    const toast = q(root, "#toast");
    expect(toast.hidden).toBe(false);
    expect(toast.textContent).toContain("network error");

    q(root, "#retry").dispatchEvent(new FakeEvent("click"));
    await flush();
    expect(q(root, "#route-count").textContent).toBe("2");
    expect(q(root, "#toast").hidden).toBe(true);
  });

  it("shows the service note when the clipped graph is empty", async () => {
    const { fetchFn } = fixtureService();
    const emptyFetch = (async (url: unknown, init?: unknown) => {
      if (String(url).endsWith("/api/routes")) {
        JSON.parse(String((init as { body?: unknown })?.body));
        return jsonResponse(EMPTY_RESPONSE);
      }
      return (fetchFn as unknown as (u: unknown, i?: unknown) => unknown)(url, init);
    }) as unknown as typeof fetch;

    const root = makeRoot();
    const app = await bootstrap(root, { fetchFn: emptyFetch });
    app.store.setStart(START);
    app.store.setEnd(END);
    await idle();

    const hint = q(root, "#hint");
    expect(hint.hidden).toBe(false);
    expect(hint.textContent).toContain("enlarge");
    expect(q(root, "#route-count").textContent).toBe("0");
  });

  it("renders a fatal message when the graph metadata is unavailable", async () => {
    const fetchFn = (async (url: unknown) => {
      if (String(url).endsWith("settings.json")) return jsonResponse({}, 404);
      return jsonResponse({ detail: "no graph loaded" }, 404);
    }) as unknown as typeof fetch;
    const root = makeRoot();
    await expect(bootstrap(root, { fetchFn })).rejects.toMatchObject({ status: 404 });
    expect(q(root, ".fatal").textContent).toContain("no graph loaded");
  });
});

describe("settings", () => {
  it("uses the configured tile provider", async () => {
    const { root } = await boot({
      settings: { tileUrl: "https://custom.test/{z}/{x}/{y}.png" },
    });
    const tile = q(root, ".tile");
    expect(tile.src.startsWith("https://custom.test/")).toBe(true);
  });

  it("caps the route list at the configured size with a prompt", async () => {
    const { root, app } = await boot({ settings: { listCap: 1 } });
    app.store.setStart(START);
    app.store.setEnd(END);
    await idle();

    expect((root as unknown as FakeElement).querySelectorAll(".route-entry")).toHaveLength(1);
    expect(q(root, ".cap-note").textContent).toContain("first 1 of 2");
    expect(q(root, "#route-count").textContent).toBe("2");
  });

  it("falls back to defaults when the settings file is missing", async () => {
    const { root, app } = await boot();
    expect(app.settings.listCap).toBe(200);
    expect(q(root, ".attribution").textContent).toContain("OpenStreetMap");
  });
});
