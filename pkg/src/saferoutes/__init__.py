"""Pareto-optimal bicycle routing over ordinal street-safety categories."""

from .geojson import category_breakdown_m, feature_collection, route_feature, route_table
from .graph import (
    EARTH_RADIUS_M,
    EmptyGraphError,
    GeometryError,
    GeoPoint,
    GraphEdge,
    GraphNode,
    RoutingGraph,
    bbox_subgraph,
    dedupe_parallel_edges,
    graph_from_payload,
    graph_to_payload,
    haversine_length,
    haversine_m,
    load_graph,
    nearest_node,
    save_graph,
    simplify,
    validate_graph,
)
from .ordinal import (
    EPSILON_M,
    Category,
    CategoryScale,
    CostVector,
    DimensionError,
    EdgeCost,
    InvalidCategoryError,
    WeightVector,
    accumulate,
    category_indicator,
    dominates,
    pareto_filter,
    weighted_indicator,
)
from .osm import (
    DEFAULT_CONFIG,
    IngestConfig,
    OsmParseError,
    RawNode,
    RawWay,
    bike_filter,
    build_graph,
    categorize,
    parse_osm_xml,
)
from .query import RouteQuery, RouteSetSummary, QueryResult, execute_query
from .service import create_app
from .solver import (
    GraphTooLargeError,
    NodeNotFoundError,
    RouteSolution,
    SolveBudgetExceeded,
    SweepRow,
    brute_force_paths,
    solve,
    sweep_weights,
)

__version__ = "0.1.0"

__all__ = [
    "EARTH_RADIUS_M",
    "EPSILON_M",
    "Category",
    "CategoryScale",
    "CostVector",
    "DEFAULT_CONFIG",
    "DimensionError",
    "EdgeCost",
    "EmptyGraphError",
    "GeoPoint",
    "GeometryError",
    "GraphEdge",
    "GraphNode",
    "GraphTooLargeError",
    "IngestConfig",
    "InvalidCategoryError",
    "NodeNotFoundError",
    "OsmParseError",
    "QueryResult",
    "RawNode",
    "RawWay",
    "RouteQuery",
    "RouteSetSummary",
    "RouteSolution",
    "RoutingGraph",
    "SolveBudgetExceeded",
    "SweepRow",
    "WeightVector",
    "accumulate",
    "bbox_subgraph",
    "bike_filter",
    "brute_force_paths",
    "build_graph",
    "categorize",
    "category_breakdown_m",
    "category_indicator",
    "create_app",
    "dedupe_parallel_edges",
    "dominates",
    "execute_query",
    "feature_collection",
    "graph_from_payload",
    "graph_to_payload",
    "haversine_length",
    "haversine_m",
    "load_graph",
    "nearest_node",
    "pareto_filter",
    "parse_osm_xml",
    "route_feature",
    "route_table",
    "save_graph",
    "simplify",
    "solve",
    "sweep_weights",
    "validate_graph",
    "weighted_indicator",
]
