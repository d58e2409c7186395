// Query state shared by the map, the sliders and the result panel.

import type { LatLon } from "./types.js";

export const WEIGHT_MIN = 1;
export const WEIGHT_MAX = 16;

export type QueryState = {
  start: LatLon | null;
  end: LatLon | null;
  /** detour weights, one per category boundary (K-1 of them) */
  weights: number[];
  bboxDist: number | null;
  /** unweighted-cost key of the selected route, see vectorKey() */
  selectedKey: string | null;
};

export function clampWeight(value: number): number {
  if (Number.isNaN(value)) return WEIGHT_MIN;
  return Math.min(WEIGHT_MAX, Math.max(WEIGHT_MIN, value));
}

type Listener = (state: QueryState) => void;

export class QueryStore {
  private state: QueryState;
  private listeners = new Set<Listener>();

  constructor(categoryCount: number, bboxDist: number | null = null) {
    if (categoryCount < 2) {
      throw new Error(`need at least 2 categories, got ${categoryCount}`);
    }
    this.state = {
      start: null,
      end: null,
      weights: new Array(categoryCount - 1).fill(WEIGHT_MIN),
      bboxDist,
      selectedKey: null,
    };
  }

  get(): QueryState {
    return this.state;
  }

  /** A route query makes sense only once both endpoints are placed. */
  ready(): boolean {
    return this.state.start !== null && this.state.end !== null;
  }

  setStart(point: LatLon | null): void {
    this.update({ start: point });
  }

  setEnd(point: LatLon | null): void {
    this.update({ end: point });
  }

  setWeight(index: number, value: number): void {
    if (index < 0 || index >= this.state.weights.length) {
      throw new Error(`no detour weight at index ${index}`);
    }
    const weights = this.state.weights.slice();
    weights[index] = clampWeight(value);
    this.update({ weights });
  }

  setBboxDist(meters: number | null): void {
    this.update({ bboxDist: meters !== null && meters > 0 ? meters : null });
  }

  select(key: string | null): void {
    this.update({ selectedKey: key });
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private update(patch: Partial<QueryState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }
}
