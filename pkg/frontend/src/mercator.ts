// Web-Mercator math for the slippy map: world pixel coordinates at a zoom
// level, in units of pixels from the top-left of tile (0, 0).

import type { LatLon } from "./types.js";

export const TILE_SIZE = 256;
export const MIN_ZOOM = 2;
export const MAX_ZOOM = 19;

const MAX_MERCATOR_LAT = 85.05112878;

export function worldSize(zoom: number): number {
  return TILE_SIZE * 2 ** zoom;
}

export function lonToX(lon: number, zoom: number): number {
  return ((lon + 180) / 360) * worldSize(zoom);
}

export function latToY(lat: number, zoom: number): number {
  const clamped = Math.max(-MAX_MERCATOR_LAT, Math.min(MAX_MERCATOR_LAT, lat));
  const rad = (clamped * Math.PI) / 180;
  const merc = Math.log(Math.tan(rad) + 1 / Math.cos(rad));
  return ((1 - merc / Math.PI) / 2) * worldSize(zoom);
}

export function xToLon(x: number, zoom: number): number {
  return (x / worldSize(zoom)) * 360 - 180;
}

export function yToLat(y: number, zoom: number): number {
  const n = Math.PI * (1 - (2 * y) / worldSize(zoom));
  return (Math.atan(Math.sinh(n)) * 180) / Math.PI;
}

export function project(point: LatLon, zoom: number): { x: number; y: number } {
  return { x: lonToX(point.lon, zoom), y: latToY(point.lat, zoom) };
}

export function unproject(x: number, y: number, zoom: number): LatLon {
  return { lat: yToLat(y, zoom), lon: xToLon(x, zoom) };
}

/** Center and the largest integer zoom that fits the box in the viewport. */
export function fitBounds(
  bbox: [number, number, number, number],
  width: number,
  height: number,
): { center: LatLon; zoom: number } {
  const [minLon, minLat, maxLon, maxLat] = bbox;
  const center = { lat: (minLat + maxLat) / 2, lon: (minLon + maxLon) / 2 };
  for (let zoom = MAX_ZOOM; zoom > MIN_ZOOM; zoom--) {
    const spanX = lonToX(maxLon, zoom) - lonToX(minLon, zoom);
    const spanY = latToY(minLat, zoom) - latToY(maxLat, zoom);
    if (spanX <= width * 0.9 && spanY <= height * 0.9) {
      return { center, zoom };
    }
  }
  return { center, zoom: MIN_ZOOM };
}
