// Shapes of the route service HTTP API and of the client settings file.

export type LatLon = { lat: number; lon: number };

export type GraphMeta = {
  K: number;
  labels: string[];
  colors: string[];
  node_count: number;
  edge_count: number;
  /** [minLon, minLat, maxLon, maxLat] */
  bbox: [number, number, number, number];
};

export type RouteProperties = {
  route_id: number;
  total_length_m: number;
  weighted_cost: number[];
  unweighted_cost: number[];
  category_breakdown_m: number[];
  /** safety category of each geometry part, in order */
  leg_categories: number[];
};

export type RouteFeature = {
  type: "Feature";
  geometry: {
    type: "MultiLineString";
    /** one part per leg, positions as [lon, lat] */
    coordinates: [number, number][][];
  };
  properties: RouteProperties;
};

export type RoutesResponse = {
  routes: { type: "FeatureCollection"; features: RouteFeature[] };
  summary: { count: number; mean_length_m: number | null; runtime_s: number };
  note?: string;
};

export type Settings = {
  tileUrl: string;
  attribution: string;
  defaultBboxDist: number | null;
  listCap: number;
};

export const DEFAULT_SETTINGS: Settings = {
  tileUrl: "https://tile.openstreetmap.org/{z}/{x}/{y}.png",
  attribution: "Map data © OpenStreetMap contributors",
  defaultBboxDist: null,
  listCap: 200,
};
