"""Shared query execution for the CLI and the HTTP service.

Both entry points funnel through :func:`execute_query`, so a given graph and
query produce the same route set no matter how they were asked.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass

from .graph import EmptyGraphError, GeoPoint, RoutingGraph, bbox_subgraph, haversine_m, nearest_node
from .ordinal import CategoryScale, DimensionError, WeightVector
from .solver import RouteSolution, solve

logger = logging.getLogger(__name__)

#: Snap distances beyond this trigger a warning; the query still runs.
SNAP_WARN_M = 500.0

EMPTY_BBOX_NOTE = "no graph nodes inside the bounding box; enlarge bbox_dist_m"


@dataclass(frozen=True)
class RouteQuery:
    """Endpoints in WGS84, detour weights, optional clip box half-width."""

    origin: GeoPoint
    destination: GeoPoint
    weights: WeightVector
    bbox_dist_m: float | None = None

    def __post_init__(self) -> None:
        if self.bbox_dist_m is not None and self.bbox_dist_m <= 0.0:
            raise ValueError(f"bbox_dist_m must be positive, got {self.bbox_dist_m}")


@dataclass(frozen=True)
class RouteSetSummary:
    count: int
    mean_length_m: float | None
    runtime_s: float


@dataclass(frozen=True)
class QueryResult:
    solutions: tuple[RouteSolution, ...]
    summary: RouteSetSummary
    snap_origin_m: float | None
    snap_destination_m: float | None
    note: str | None = None


def execute_query(
    graph: RoutingGraph,
    scale: CategoryScale,
    query: RouteQuery,
    *,
    time_budget_s: float | None = None,
) -> QueryResult:
    """Clip, snap and solve; an empty route set is a normal result.

    The clip box, when requested, is centered on the origin.  Endpoints snap
    to the nearest surviving node; snaps beyond :data:`SNAP_WARN_M` are
    logged and reported but do not fail the query.
    """
    if len(query.weights) != scale.size - 1:
        raise DimensionError(
            f"scale of size {scale.size} needs {scale.size - 1} weights, "
            f"got {len(query.weights)}"
        )
    started = time.perf_counter()
    if query.bbox_dist_m is not None:
        try:
            working = bbox_subgraph(graph, query.origin, query.bbox_dist_m)
        except EmptyGraphError:
            runtime = time.perf_counter() - started
            return QueryResult((), RouteSetSummary(0, None, runtime), None, None, EMPTY_BBOX_NOTE)
    else:
        working = graph

    source = nearest_node(working, query.origin)
    target = nearest_node(working, query.destination)
    snap_origin = haversine_m(working.nodes[source].position, query.origin)
    snap_destination = haversine_m(working.nodes[target].position, query.destination)
    for name, snap in (("origin", snap_origin), ("destination", snap_destination)):
        if snap > SNAP_WARN_M:
            logger.warning("%s snapped %.0f m to node, check the coordinates", name, snap)

    solutions = solve(working, source, target, query.weights, time_budget_s=time_budget_s)
    runtime = time.perf_counter() - started
    mean_length = (
        sum(s.total_length_m for s in solutions) / len(solutions) if solutions else None
    )
    summary = RouteSetSummary(len(solutions), mean_length, runtime)
    return QueryResult(tuple(solutions), summary, snap_origin, snap_destination)
