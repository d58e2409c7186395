// Ordering, filtering and identity of route list entries. Route data is
// never modified, only rearranged; vectors are displayed exactly as served.

import type { RouteFeature } from "./types.js";

export type SortKey =
  | { kind: "length" }
  | { kind: "component"; index: number }; // 1-based position in the plain vector

export function sortAndFilter(
  features: readonly RouteFeature[],
  sort: SortKey,
  maxLengthM: number | null = null,
): RouteFeature[] {
  const kept =
    maxLengthM === null
      ? features.slice()
      : features.filter((f) => f.properties.total_length_m <= maxLengthM);
  const value =
    sort.kind === "length"
      ? (f: RouteFeature) => f.properties.total_length_m
      : (f: RouteFeature) => f.properties.unweighted_cost[sort.index - 1] ?? 0;
  // Array.prototype.sort is stable, so ties keep the server's order.
  return kept.sort((a, b) => value(a) - value(b));
}

/** Identity of a route across re-queries: its plain by-category vector. */
export function vectorKey(vector: readonly number[]): string {
  return vector.join(",");
}

export function findByKey(
  features: readonly RouteFeature[],
  key: string | null,
): RouteFeature | null {
  if (key === null) return null;
  return features.find((f) => vectorKey(f.properties.unweighted_cost) === key) ?? null;
}
