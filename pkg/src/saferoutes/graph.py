"""Directed routing graph with street geometry.

Holds the node and adjacency tables the route search runs on, plus the
graph transformations of the ingest pipeline: parallel-edge deduplication,
pass-through node contraction, bounding-box clipping, nearest-node snapping,
and the JSON interchange format that couples a graph with its category scale.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .ordinal import Category, CategoryScale, EdgeCost

logger = logging.getLogger(__name__)

EARTH_RADIUS_M = 6_371_000.0

#: Meters per degree of latitude in the flat-earth box approximation.
METERS_PER_DEGREE = 111_320.0


class GeometryError(ValueError):
    """Edge geometry is unusable (too short, endpoints off their nodes, ...)."""


class EmptyGraphError(ValueError):
    """An operation that needs nodes was handed a graph without any."""


@dataclass(frozen=True, order=True)
class GeoPoint:
    """WGS84 coordinate in degrees."""

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (-90.0 <= self.lat <= 90.0):
            raise ValueError(f"latitude out of range: {self.lat}")
        if not (-180.0 <= self.lon <= 180.0):
            raise ValueError(f"longitude out of range: {self.lon}")


@dataclass(frozen=True)
class GraphNode:
    id: int
    position: GeoPoint


@dataclass(frozen=True)
class GraphEdge:
    """One directed, traversable street segment or merged chain of segments."""

    from_node: int
    to_node: int
    cost: EdgeCost
    geometry: tuple[GeoPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "geometry", tuple(self.geometry))
        if len(self.geometry) < 2:
            raise GeometryError(
                f"edge {self.from_node}->{self.to_node} needs at least 2 geometry points"
            )


def haversine_m(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters on a 6371 km sphere."""
    lat1, lon1 = math.radians(a.lat), math.radians(a.lon)
    lat2, lon2 = math.radians(b.lat), math.radians(b.lon)
    s = (
        math.sin((lat2 - lat1) / 2.0) ** 2
        + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2.0) ** 2
    )
    # Clamp against rounding pushing the argument a hair above 1.
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(s)))


def haversine_length(polyline: Sequence[GeoPoint]) -> float:
    """Sum of haversine distances along a polyline of at least two points."""
    if len(polyline) < 2:
        raise GeometryError(f"polyline needs at least 2 points, got {len(polyline)}")
    return sum(haversine_m(p, q) for p, q in zip(polyline, polyline[1:]))


@dataclass(frozen=True)
class RoutingGraph:
    """Immutable-by-convention node and adjacency tables.

    ``adjacency`` lists outgoing edges per node id, in insertion order, which
    fixes the traversal order of the route search for a given graph file.
    Freshly built graphs may still contain parallel edges; the transformations
    below return new graphs and guarantee at most one edge per ordered node
    pair in their output.
    """

    nodes: dict[int, GraphNode] = field(default_factory=dict)
    adjacency: dict[int, tuple[GraphEdge, ...]] = field(default_factory=dict)

    @classmethod
    def from_edges(
        cls, nodes: Iterable[GraphNode], edges: Iterable[GraphEdge]
    ) -> RoutingGraph:
        node_map: dict[int, GraphNode] = {}
        for node in nodes:
            known = node_map.get(node.id)
            if known is not None and known != node:
                raise ValueError(f"node id {node.id} given twice with different data")
            node_map[node.id] = node
        adjacency: dict[int, list[GraphEdge]] = {nid: [] for nid in node_map}
        for edge in edges:
            if edge.from_node not in node_map or edge.to_node not in node_map:
                raise ValueError(
                    f"edge {edge.from_node}->{edge.to_node} references an unknown node"
                )
            adjacency[edge.from_node].append(edge)
        return cls(node_map, {nid: tuple(out) for nid, out in adjacency.items()})

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return sum(len(out) for out in self.adjacency.values())

    def out_edges(self, node_id: int) -> tuple[GraphEdge, ...]:
        return self.adjacency.get(node_id, ())

    def edges(self) -> Iterator[GraphEdge]:
        for out in self.adjacency.values():
            yield from out

    def bbox(self) -> tuple[float, float, float, float]:
        """(min_lat, min_lon, max_lat, max_lon) over all nodes."""
        if not self.nodes:
            raise EmptyGraphError("bbox of an empty graph")
        lats = [n.position.lat for n in self.nodes.values()]
        lons = [n.position.lon for n in self.nodes.values()]
        return (min(lats), min(lons), max(lats), max(lons))


def dedupe_parallel_edges(graph: RoutingGraph) -> RoutingGraph:
    """Keep one edge per ordered node pair: best category first, then shortest.

    Among edges tied on both criteria the first encountered wins, so the
    result is deterministic for a fixed input order.
    """
    best: dict[tuple[int, int], GraphEdge] = {}
    for edge in graph.edges():
        key = (edge.from_node, edge.to_node)
        incumbent = best.get(key)
        if incumbent is None:
            best[key] = edge
            continue
        challenger = (edge.cost.category.index, edge.cost.length_m)
        holder = (incumbent.cost.category.index, incumbent.cost.length_m)
        if challenger < holder:
            best[key] = edge
    return RoutingGraph.from_edges(graph.nodes.values(), best.values())


def _neighbour_sets(graph: RoutingGraph) -> dict[int, set[int]]:
    neighbours: dict[int, set[int]] = {nid: set() for nid in graph.nodes}
    for edge in graph.edges():
        neighbours[edge.from_node].add(edge.to_node)
        neighbours[edge.to_node].add(edge.from_node)
    return neighbours


def _is_interior(
    node_id: int,
    neighbours: Mapping[int, set[int]],
    edge_keys: set[tuple[int, int]],
) -> bool:
    """Pass-through test: two distinct neighbours, and every direction that can
    enter the node can also leave it toward the other neighbour.

    Nodes nothing can enter are kept; there is no through-traffic to preserve
    and dropping them would silently remove a possible trip start.
    """
    around = neighbours[node_id]
    if len(around) != 2 or node_id in around:
        return False
    a, b = around
    in_from_a = (a, node_id) in edge_keys
    in_from_b = (b, node_id) in edge_keys
    if not (in_from_a or in_from_b):
        return False
    if in_from_a and (node_id, b) not in edge_keys:
        return False
    if in_from_b and (node_id, a) not in edge_keys:
        return False
    return True


def simplify(graph: RoutingGraph, keep: Iterable[int] = ()) -> RoutingGraph:
    """Contract pass-through nodes, merging each chain into a single edge.

    A merged edge sums the chain lengths, concatenates the chain geometry and
    carries the worst category along the chain.  Junctions, dead ends and the
    node ids in ``keep`` survive; connectivity between surviving nodes is
    unchanged.  Expects a deduplicated graph and re-deduplicates its output,
    because distinct chains between the same pair of junctions collapse onto
    the same ordered node pair.
    """
    protected = set(keep)
    neighbours = _neighbour_sets(graph)
    edge_map: dict[tuple[int, int], GraphEdge] = {
        (e.from_node, e.to_node): e for e in graph.edges()
    }
    edge_keys = set(edge_map)
    interior = {
        nid
        for nid in graph.nodes
        if nid not in protected and _is_interior(nid, neighbours, edge_keys)
    }

    merged: list[GraphEdge] = []
    for edge in graph.edges():
        if edge.from_node in interior:
            continue  # reached mid-chain, the walk from the anchor covers it
        if edge.to_node not in interior:
            merged.append(edge)
            continue
        # Walk the chain until it leaves the interior.
        previous = edge.from_node
        current = edge.to_node
        length = edge.cost.length_m
        worst = edge.cost.category
        geometry = list(edge.geometry)
        for _ in range(graph.node_count + 1):
            a, b = neighbours[current]
            following = edge_map[(current, b if previous == a else a)]
            length += following.cost.length_m
            worst = max(worst, following.cost.category)
            geometry.extend(following.geometry[1:])
            previous, current = current, following.to_node
            if current not in interior:
                break
        else:  # pragma: no cover - interior chains always end at an anchor
            raise RuntimeError("chain walk did not terminate")
        if current == edge.from_node:
            continue  # a loop back onto its anchor is never worth traversing
        merged.append(
            GraphEdge(edge.from_node, current, EdgeCost(length, worst), tuple(geometry))
        )

    surviving = [node for nid, node in graph.nodes.items() if nid not in interior]
    return dedupe_parallel_edges(RoutingGraph.from_edges(surviving, merged))


def bbox_subgraph(graph: RoutingGraph, center: GeoPoint, dist_m: float) -> RoutingGraph:
    """Restrict the graph to a square of half-width ``dist_m`` around ``center``.

    The square uses the flat-earth approximation: ``dist_m`` is converted to a
    latitude delta and to a longitude delta scaled by the cosine of the center
    latitude.  Edges survive only when both endpoints do.
    """
    if dist_m <= 0.0:
        raise ValueError(f"bounding-box distance must be positive, got {dist_m}")
    dlat = dist_m / METERS_PER_DEGREE
    dlon = dist_m / (METERS_PER_DEGREE * math.cos(math.radians(center.lat)))
    kept = {
        nid
        for nid, node in graph.nodes.items()
        if abs(node.position.lat - center.lat) <= dlat
        and abs(node.position.lon - center.lon) <= dlon
    }
    if not kept:
        raise EmptyGraphError(
            f"no nodes within {dist_m} m of ({center.lat}, {center.lon})"
        )
    edges = [
        e for e in graph.edges() if e.from_node in kept and e.to_node in kept
    ]
    return RoutingGraph.from_edges(
        (graph.nodes[nid] for nid in kept), edges
    )


def nearest_node(graph: RoutingGraph, point: GeoPoint) -> int:
    """Id of the node closest to ``point``; ties go to the smaller id."""
    if not graph.nodes:
        raise EmptyGraphError("nearest node of an empty graph")
    return min(
        graph.nodes.values(),
        key=lambda node: (haversine_m(node.position, point), node.id),
    ).id


def validate_graph(graph: RoutingGraph) -> None:
    """Check the structural guarantees the ingest pipeline promises.

    Raises on parallel edges, edge geometry whose endpoints are off their
    nodes, or stored lengths more than 0.5% away from the geometry length.
    Meant for pipeline outputs and tests; ad-hoc graphs built directly from
    edge lists are free to carry schematic geometry.
    """
    seen: set[tuple[int, int]] = set()
    for edge in graph.edges():
        key = (edge.from_node, edge.to_node)
        if key in seen:
            raise ValueError(f"parallel edges between {key[0]} and {key[1]}")
        seen.add(key)
        start = graph.nodes[edge.from_node].position
        end = graph.nodes[edge.to_node].position
        if edge.geometry[0] != start or edge.geometry[-1] != end:
            raise GeometryError(
                f"geometry of edge {key[0]}->{key[1]} does not end on its nodes"
            )
        along = haversine_length(edge.geometry)
        if along > 0.0 and abs(edge.cost.length_m - along) > 0.005 * along:
            raise GeometryError(
                f"edge {key[0]}->{key[1]} stores length {edge.cost.length_m:.2f} m "
                f"but its geometry measures {along:.2f} m"
            )


def scale_to_payload(scale: CategoryScale) -> dict:
    return {"K": scale.size, "labels": list(scale.labels), "colors": list(scale.colors)}


def scale_from_payload(payload: Mapping) -> CategoryScale:
    return CategoryScale(
        int(payload["K"]), tuple(payload["labels"]), tuple(payload["colors"])
    )


def graph_to_payload(graph: RoutingGraph, scale: CategoryScale) -> dict:
    """JSON-ready document pairing a graph with its scale.

    Nodes are sorted by id and edges by ordered node pair, so the same graph
    always serializes to the same document.
    """
    nodes = [
        {"id": node.id, "lat": node.position.lat, "lon": node.position.lon}
        for node in sorted(graph.nodes.values(), key=lambda n: n.id)
    ]
    edges = [
        {
            "from": edge.from_node,
            "to": edge.to_node,
            "length_m": edge.cost.length_m,
            "category": edge.cost.category.index,
            "geometry": [[p.lat, p.lon] for p in edge.geometry],
        }
        for edge in sorted(graph.edges(), key=lambda e: (e.from_node, e.to_node))
    ]
    return {"scale": scale_to_payload(scale), "nodes": nodes, "edges": edges}


def graph_from_payload(payload: Mapping) -> tuple[RoutingGraph, CategoryScale]:
    scale = scale_from_payload(payload["scale"])
    nodes = [
        GraphNode(int(n["id"]), GeoPoint(float(n["lat"]), float(n["lon"])))
        for n in payload["nodes"]
    ]
    edges = []
    for e in payload["edges"]:
        category = scale.category(int(e["category"]))
        geometry = tuple(GeoPoint(float(lat), float(lon)) for lat, lon in e["geometry"])
        edges.append(
            GraphEdge(
                int(e["from"]),
                int(e["to"]),
                EdgeCost(float(e["length_m"]), category),
                geometry,
            )
        )
    return RoutingGraph.from_edges(nodes, edges), scale


def save_graph(path: str | Path, graph: RoutingGraph, scale: CategoryScale) -> None:
    Path(path).write_text(
        json.dumps(graph_to_payload(graph, scale), separators=(",", ":")),
        encoding="utf-8",
    )


def load_graph(path: str | Path) -> tuple[RoutingGraph, CategoryScale]:
    return graph_from_payload(json.loads(Path(path).read_text(encoding="utf-8")))
