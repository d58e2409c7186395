// Side panel: detour-weight sliders, category legend, result list with
// per-category length bars, sort/filter controls and error surfaces. Pure DOM,
// no framework; the app wires the handlers to the query store and API client.

import type { SortKey } from "./routes.js";
import { vectorKey } from "./routes.js";
import { WEIGHT_MAX, WEIGHT_MIN } from "./state.js";
import type { GraphMeta, RouteFeature, RoutesResponse } from "./types.js";

export type PanelHandlers = {
  onWeightInput: (index: number, value: number) => void;
  onBboxDistInput: (meters: number | null) => void;
  onSortChange: (key: SortKey) => void;
  onMaxLengthChange: (meters: number | null) => void;
  onSelect: (key: string | null) => void;
  onRetry: () => void;
};

/** Trim service floats for display: 200.0 -> "200", 302.73 stays. */
export function formatMeters(value: number): string {
  return value
    .toFixed(2)
    .replace(/0+$/, "")
    .replace(/\.$/, "");
}

export function formatVector(vector: number[]): string {
  return `(${vector.map(formatMeters).join(", ")})`;
}

export class Panel {
  private readonly countBadge: HTMLElement;
  private readonly list: HTMLElement;
  private readonly hint: HTMLElement;
  private readonly toast: HTMLElement;
  private readonly sliderBox: HTMLElement;

  constructor(
    root: HTMLElement,
    private readonly meta: GraphMeta,
    private readonly listCap: number,
    private readonly handlers: PanelHandlers,
  ) {
    root.classList.add("panel");

    const heading = document.createElement("h1");
    heading.textContent = "safe routes";
    root.appendChild(heading);

    this.countBadge = document.createElement("span");
    this.countBadge.id = "route-count";
    this.countBadge.textContent = "0";
    heading.appendChild(this.countBadge);

    this.sliderBox = this.buildSliders();
    root.appendChild(this.sliderBox);
    root.appendChild(this.buildLegend());
    root.appendChild(this.buildListControls());

    this.hint = document.createElement("p");
    this.hint.id = "hint";
    this.hint.textContent = "click the map to place the start and the destination";
    root.appendChild(this.hint);

    this.list = document.createElement("ol");
    this.list.id = "route-list";
    root.appendChild(this.list);

    this.toast = document.createElement("div");
    this.toast.id = "toast";
    this.toast.hidden = true;
    root.appendChild(this.toast);
  }

  private buildSliders(): HTMLElement {
    const box = document.createElement("div");
    box.className = "weights";
    const title = document.createElement("h2");
    title.textContent = "detour weights";
    box.appendChild(title);

    for (let i = 0; i < this.meta.K - 1; i++) {
      const row = document.createElement("label");
      row.className = "weight-row";

      const caption = document.createElement("span");
      caption.className = "weight-caption";
      caption.textContent = `${this.meta.labels[i]} over ${this.meta.labels[i + 1]}`;
      row.appendChild(caption);

      const slider = document.createElement("input");
      slider.type = "range";
      slider.className = "weight-slider";
      slider.min = String(WEIGHT_MIN);
      slider.max = String(WEIGHT_MAX);
      slider.step = "0.5";
      slider.value = String(WEIGHT_MIN);
      slider.dataset.weightIndex = String(i);
      row.appendChild(slider);

      const readout = document.createElement("span");
      readout.className = "weight-value";
      readout.textContent = `×${Number(slider.value)}`;
      row.appendChild(readout);

      slider.addEventListener("input", () => {
        readout.textContent = `×${Number(slider.value)}`;
        this.handlers.onWeightInput(i, Number(slider.value));
      });
      box.appendChild(row);
    }
    return box;
  }

  private buildLegend(): HTMLElement {
    const legend = document.createElement("ul");
    legend.id = "legend";
    this.meta.labels.forEach((label, i) => {
      const item = document.createElement("li");
      const swatch = document.createElement("span");
      swatch.className = "swatch";
      const color = this.meta.colors[i] ?? "#888888";
      swatch.dataset.color = color;
      swatch.style.backgroundColor = color;
      item.appendChild(swatch);
      item.appendChild(document.createTextNode(label));
      legend.appendChild(item);
    });
    return legend;
  }

  private buildListControls(): HTMLElement {
    const controls = document.createElement("div");
    controls.className = "list-controls";

    const sortSelect = document.createElement("select");
    sortSelect.id = "sort-select";
    const byLength = document.createElement("option");
    byLength.value = "length";
    byLength.textContent = "sort by total length";
    sortSelect.appendChild(byLength);
    for (let i = 1; i <= this.meta.K; i++) {
      const option = document.createElement("option");
      option.value = `component-${i}`;
      option.textContent = `sort by length on ${this.meta.labels[i - 1]} or worse`;
      sortSelect.appendChild(option);
    }
    sortSelect.addEventListener("change", () => {
      const value = sortSelect.value;
      this.handlers.onSortChange(
        value === "length"
          ? { kind: "length" }
          : { kind: "component", index: Number(value.split("-")[1]) },
      );
    });
    controls.appendChild(sortSelect);

    const maxLength = document.createElement("input");
    maxLength.type = "number";
    maxLength.id = "max-length";
    maxLength.placeholder = "max length (m)";
    maxLength.min = "0";
    maxLength.addEventListener("change", () => {
      const meters = Number(maxLength.value);
      this.handlers.onMaxLengthChange(maxLength.value !== "" && meters > 0 ? meters : null);
    });
    controls.appendChild(maxLength);

    const bboxDist = document.createElement("input");
    bboxDist.type = "number";
    bboxDist.id = "bbox-dist";
    bboxDist.placeholder = "search radius (m, auto)";
    bboxDist.min = "0";
    bboxDist.addEventListener("change", () => {
      const meters = Number(bboxDist.value);
      this.handlers.onBboxDistInput(bboxDist.value !== "" && meters > 0 ? meters : null);
    });
    controls.appendChild(bboxDist);

    return controls;
  }

  /** Render a successful response; `visible` is the sorted/filtered subset. */
  showRoutes(
    response: RoutesResponse,
    visible: RouteFeature[],
    selectedKey: string | null,
  ): void {
    this.hideError();
    this.markWeightsInvalid(false);
    this.countBadge.textContent = String(response.summary.count);
    this.list.replaceChildren();

    if (visible.length === 0) {
      const fallback =
        response.summary.count > 0
          ? "all routes are filtered out; raise the max length"
          : "no route between these points";
      this.hint.textContent = response.note ?? fallback;
      this.hint.hidden = false;
      return;
    }
    this.hint.hidden = true;

    for (const feature of visible.slice(0, this.listCap)) {
      this.list.appendChild(this.routeEntry(feature, selectedKey));
    }
    if (visible.length > this.listCap) {
      const capNote = document.createElement("li");
      capNote.className = "cap-note";
      capNote.textContent =
        `showing first ${this.listCap} of ${visible.length} routes; ` +
        "raise the detour weights to narrow the set";
      this.list.appendChild(capNote);
    }
  }

  private routeEntry(feature: RouteFeature, selectedKey: string | null): HTMLLIElement {
    const p = feature.properties;
    const entry = document.createElement("li");
    entry.className = "route-entry";
    const key = vectorKey(p.unweighted_cost);
    entry.dataset.key = key;
    if (key === selectedKey) entry.classList.add("selected");

    const title = document.createElement("div");
    title.className = "route-title";
    title.textContent = `${formatMeters(p.total_length_m)} m`;
    entry.appendChild(title);

    const bar = document.createElement("div");
    bar.className = "category-bar";
    p.category_breakdown_m.forEach((meters, i) => {
      if (meters <= 0) return;
      const segment = document.createElement("span");
      segment.style.flexGrow = String(meters);
      segment.style.backgroundColor = this.meta.colors[i] ?? "#888888";
      segment.title = `${this.meta.labels[i]}: ${formatMeters(meters)} m`;
      bar.appendChild(segment);
    });
    entry.appendChild(bar);

    const detail = document.createElement("div");
    detail.className = "route-detail";
    detail.textContent =
      `by category ${formatVector(p.unweighted_cost)} m` +
      ` · weighted ${formatVector(p.weighted_cost)}`;
    entry.appendChild(detail);

    entry.addEventListener("click", () => {
      this.handlers.onSelect(key === selectedKey ? null : key);
    });
    return entry;
  }

  showIdleHint(): void {
    this.hideError();
    this.countBadge.textContent = "0";
    this.list.replaceChildren();
    this.hint.textContent = "click the map to place the start and the destination";
    this.hint.hidden = false;
  }

  markWeightsInvalid(on: boolean): void {
    this.sliderBox.classList.toggle("invalid", on);
  }

  showError(message: string, retryable: boolean): void {
    this.toast.replaceChildren();
    this.toast.hidden = false;
    const text = document.createElement("span");
    text.textContent = message;
    this.toast.appendChild(text);
    if (retryable) {
      const retry = document.createElement("button");
      retry.type = "button";
      retry.id = "retry";
      retry.textContent = "retry";
      retry.addEventListener("click", () => {
        this.hideError();
        this.handlers.onRetry();
      });
      this.toast.appendChild(retry);
    }
  }

  hideError(): void {
    this.toast.hidden = true;
    this.toast.replaceChildren();
  }
}
