// Draws route geometries into the map overlay. Each feature is a
// MultiLineString whose parts are single-category legs; every leg becomes one
// polyline stroked with that category's color so the safety mix is visible at
// a glance. The selected route is drawn last (on top) and emphasized.

import type { SlippyMap } from "./map.js";
import { vectorKey } from "./routes.js";
import type { RouteFeature } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export type RouteLayerOptions = {
  colors: string[];
  selectedKey: string | null;
  onSelect?: (feature: RouteFeature) => void;
};

export function renderRoutes(
  map: SlippyMap,
  features: RouteFeature[],
  options: RouteLayerOptions,
): void {
  map.routeGroup.replaceChildren();
  const selected = features.filter(
    (f) => vectorKey(f.properties.unweighted_cost) === options.selectedKey,
  );
  const rest = features.filter((f) => !selected.includes(f));
  for (const feature of [...rest, ...selected]) {
    const isSelected = selected.includes(feature);
    map.routeGroup.appendChild(routeElement(map, feature, isSelected, options));
  }
}

function routeElement(
  map: SlippyMap,
  feature: RouteFeature,
  selected: boolean,
  options: RouteLayerOptions,
): SVGGElement {
  const group = document.createElementNS(SVG_NS, "g");
  group.classList.add("route");
  group.classList.add(selected ? "route-selected" : "route-dimmed");
  group.dataset.routeId = String(feature.properties.route_id);

  const legs = feature.geometry.coordinates;
  const categories = feature.properties.leg_categories;
  legs.forEach((leg, index) => {
    const polyline = document.createElementNS(SVG_NS, "polyline");
    polyline.classList.add("route-leg");
    const category = categories[index] ?? 1;
    polyline.setAttribute("stroke", options.colors[category - 1] ?? "#888888");
    polyline.setAttribute("fill", "none");
    polyline.setAttribute("stroke-width", selected ? "6" : "4");
    polyline.setAttribute("stroke-linecap", "round");
    polyline.setAttribute(
      "points",
      leg
        .map(([lon, lat]) => {
          const pixel = map.toPixel({ lat, lon });
          return `${pixel.x},${pixel.y}`;
        })
        .join(" "),
    );
    polyline.addEventListener("click", (event) => {
      event.stopPropagation();
      options.onSelect?.(feature);
    });
    group.appendChild(polyline);
  });
  return group;
}
