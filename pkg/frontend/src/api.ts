// Thin client for the route service. At most one routes request matters at
// a time: every call gets a sequence number and responses that come back
// after a newer request started are reported as stale (null) so the UI never
// renders an outdated route set over a newer one.

import type { GraphMeta, LatLon, RoutesResponse } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = typeof fetch;

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
    return JSON.stringify(body.detail ?? body);
  } catch {
    return response.statusText;
  }
}

export class ApiClient {
  private sequence = 0;

  constructor(
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
    private readonly base = "",
  ) {}

  async fetchMeta(): Promise<GraphMeta> {
    const response = await this.fetchFn(`${this.base}/api/graph/meta`);
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    return (await response.json()) as GraphMeta;
  }

  /** Resolves to null when a newer request was issued in the meantime. */
  async fetchRoutes(
    start: LatLon,
    end: LatLon,
    weights: number[],
    bboxDist: number | null,
  ): Promise<RoutesResponse | null> {
    const ticket = ++this.sequence;
    const body: Record<string, unknown> = {
      from: [start.lat, start.lon],
      to: [end.lat, end.lon],
      weights,
    };
    if (bboxDist !== null) body.bbox_dist = bboxDist;

    const response = await this.fetchFn(`${this.base}/api/routes`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (ticket !== this.sequence) return null;
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    return (await response.json()) as RoutesResponse;
  }
}
