// Minimal slippy-tile map: raster tiles from a configurable template URL,
// mouse panning, stepped zoom, two draggable endpoint markers and an SVG
// overlay for route polylines. No external map library, so the bundle works
// wherever the tile server is reachable and degrades to a blank canvas (with
// working overlay) where it is not.

import { MAX_ZOOM, MIN_ZOOM, TILE_SIZE, project, unproject } from "./mercator.js";
import type { LatLon } from "./types.js";

export type MarkerName = "start" | "end";

type MapOptions = {
  tileUrl: string;
  attribution: string;
  onPick?: (point: LatLon) => void;
  onMarkerMove?: (name: MarkerName, point: LatLon) => void;
  onViewChange?: () => void;
};

const DRAG_THRESHOLD_PX = 3;

export class SlippyMap {
  readonly overlay: SVGSVGElement;
  readonly routeGroup: SVGGElement;

  private center: LatLon = { lat: 0, lon: 0 };
  private zoom = MIN_ZOOM;
  private readonly tileLayer: HTMLDivElement;
  private readonly markers = new Map<MarkerName, HTMLDivElement>();
  private readonly options: MapOptions;

  constructor(
    private readonly container: HTMLElement,
    options: MapOptions,
  ) {
    this.options = options;
    container.classList.add("slippy-map");

    this.tileLayer = document.createElement("div");
    this.tileLayer.className = "tile-layer";
    container.appendChild(this.tileLayer);

    this.overlay = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.overlay.classList.add("route-overlay");
    this.routeGroup = document.createElementNS("http://www.w3.org/2000/svg", "g");
    this.overlay.appendChild(this.routeGroup);
    container.appendChild(this.overlay);

    const attribution = document.createElement("div");
    attribution.className = "attribution";
    attribution.textContent = options.attribution;
    container.appendChild(attribution);

    this.addZoomControl();
    this.bindPanAndPick();
  }

  private get width(): number {
    return this.container.clientWidth || 800;
  }

  private get height(): number {
    return this.container.clientHeight || 600;
  }

  getView(): { center: LatLon; zoom: number } {
    return { center: this.center, zoom: this.zoom };
  }

  setView(center: LatLon, zoom: number): void {
    this.center = center;
    this.zoom = Math.max(MIN_ZOOM, Math.min(MAX_ZOOM, Math.round(zoom)));
    this.render();
    this.options.onViewChange?.();
  }

  /** Container pixel position of a geographic point under the current view. */
  toPixel(point: LatLon): { x: number; y: number } {
    const world = project(point, this.zoom);
    const origin = this.topLeftWorld();
    return { x: world.x - origin.x, y: world.y - origin.y };
  }

  toLatLon(x: number, y: number): LatLon {
    const origin = this.topLeftWorld();
    return unproject(origin.x + x, origin.y + y, this.zoom);
  }

  setMarker(name: MarkerName, point: LatLon): void {
    let marker = this.markers.get(name);
    if (!marker) {
      marker = document.createElement("div");
      marker.className = `marker marker-${name}`;
      marker.title = name === "start" ? "start (drag to move)" : "destination (drag to move)";
      this.bindMarkerDrag(marker, name);
      this.container.appendChild(marker);
      this.markers.set(name, marker);
    }
    marker.dataset.lat = String(point.lat);
    marker.dataset.lon = String(point.lon);
    this.positionMarker(marker);
  }

  private positionMarker(marker: HTMLDivElement): void {
    const point = { lat: Number(marker.dataset.lat), lon: Number(marker.dataset.lon) };
    const pixel = this.toPixel(point);
    marker.style.left = `${pixel.x}px`;
    marker.style.top = `${pixel.y}px`;
  }

  private topLeftWorld(): { x: number; y: number } {
    const centerWorld = project(this.center, this.zoom);
    return { x: centerWorld.x - this.width / 2, y: centerWorld.y - this.height / 2 };
  }

  render(): void {
    const origin = this.topLeftWorld();
    const tileCount = 2 ** this.zoom;
    const firstX = Math.floor(origin.x / TILE_SIZE);
    const firstY = Math.floor(origin.y / TILE_SIZE);
    const lastX = Math.floor((origin.x + this.width) / TILE_SIZE);
    const lastY = Math.floor((origin.y + this.height) / TILE_SIZE);

    this.tileLayer.replaceChildren();
    for (let ty = Math.max(0, firstY); ty <= Math.min(tileCount - 1, lastY); ty++) {
      for (let tx = firstX; tx <= lastX; tx++) {
        const wrappedX = ((tx % tileCount) + tileCount) % tileCount;
        const img = document.createElement("img");
        img.className = "tile";
        img.alt = "";
        img.decoding = "async";
        img.onerror = () => {
          img.style.visibility = "hidden";
        };
        img.src = this.options.tileUrl
          .replace("{z}", String(this.zoom))
          .replace("{x}", String(wrappedX))
          .replace("{y}", String(ty));
        img.style.left = `${tx * TILE_SIZE - origin.x}px`;
        img.style.top = `${ty * TILE_SIZE - origin.y}px`;
        this.tileLayer.appendChild(img);
      }
    }
    for (const marker of this.markers.values()) this.positionMarker(marker);
  }

  private addZoomControl(): void {
    const control = document.createElement("div");
    control.className = "zoom-control";
    for (const [text, delta] of [
      ["+", 1],
      ["−", -1],
    ] as const) {
      const button = document.createElement("button");
      button.type = "button";
      button.textContent = text;
      button.addEventListener("click", () => this.setView(this.center, this.zoom + delta));
      control.appendChild(button);
    }
    this.container.appendChild(control);
  }

  private eventPoint(event: MouseEvent): { x: number; y: number } {
    const rect = this.container.getBoundingClientRect();
    return { x: event.clientX - rect.left, y: event.clientY - rect.top };
  }

  private bindPanAndPick(): void {
    let dragFrom: { x: number; y: number } | null = null;
    let moved = false;

    const targetOf = (event: MouseEvent) => event.target as Partial<HTMLElement> | null;

    this.container.addEventListener("mousedown", (event) => {
      if (targetOf(event)?.closest?.(".marker, .zoom-control")) return;
      dragFrom = this.eventPoint(event);
      moved = false;
    });
    window.addEventListener("mousemove", (event) => {
      if (!dragFrom) return;
      const at = this.eventPoint(event);
      const dx = at.x - dragFrom.x;
      const dy = at.y - dragFrom.y;
      if (!moved && Math.hypot(dx, dy) < DRAG_THRESHOLD_PX) return;
      moved = true;
      const centerPx = { x: this.width / 2 - dx, y: this.height / 2 - dy };
      this.center = this.toLatLon(centerPx.x, centerPx.y);
      dragFrom = at;
      this.render();
      this.options.onViewChange?.();
    });
    window.addEventListener("mouseup", (event) => {
      if (!dragFrom) return;
      const wasDrag = moved;
      dragFrom = null;
      if (wasDrag) return;
      if (targetOf(event)?.closest?.(".marker, .zoom-control, .route-leg")) return;
      const at = this.eventPoint(event);
      this.options.onPick?.(this.toLatLon(at.x, at.y));
    });
    this.container.addEventListener(
      "wheel",
      (event) => {
        event.preventDefault();
        this.setView(this.center, this.zoom + (event.deltaY < 0 ? 1 : -1));
      },
      { passive: false },
    );
  }

  private bindMarkerDrag(marker: HTMLDivElement, name: MarkerName): void {
    marker.addEventListener("mousedown", (down) => {
      down.stopPropagation();
      down.preventDefault();
      const move = (event: MouseEvent) => {
        const at = this.eventPoint(event);
        const point = this.toLatLon(at.x, at.y);
        marker.dataset.lat = String(point.lat);
        marker.dataset.lon = String(point.lon);
        this.positionMarker(marker);
      };
      const up = () => {
        window.removeEventListener("mousemove", move);
        window.removeEventListener("mouseup", up);
        this.options.onMarkerMove?.(name, {
          lat: Number(marker.dataset.lat),
          lon: Number(marker.dataset.lon),
        });
      };
      window.addEventListener("mousemove", move);
      window.addEventListener("mouseup", up);
    });
  }
}
