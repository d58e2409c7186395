"""HTTP service exposing the route search.

The graph is loaded once at application startup and never mutated, so
concurrent requests can solve on it independently.  Endpoints:

*  ``POST /api/routes``   run a query, answer GeoJSON routes plus a summary
*  ``GET  /api/graph/meta``   scale, node and edge counts, bounding box

A static directory (the web client bundle) can be mounted at the root.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field

from .geojson import feature_collection, summary_payload
from .graph import GeoPoint, RoutingGraph, load_graph
from .ordinal import CategoryScale, DimensionError, WeightVector
from .query import RouteQuery, execute_query
from .solver import SolveBudgetExceeded

logger = logging.getLogger(__name__)

DEFAULT_PORT = 8080
DEFAULT_TIME_BUDGET_S = 60.0


class RoutesRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    origin: tuple[float, float] = Field(alias="from")
    destination: tuple[float, float] = Field(alias="to")
    weights: list[float]
    bbox_dist: float | None = None


def _point(pair: tuple[float, float], name: str) -> GeoPoint:
    try:
        return GeoPoint(pair[0], pair[1])
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=f"{name}: {exc}") from exc


def create_app(
    graph_path: str | Path | None = None,
    *,
    static_dir: str | Path | None = None,
    time_budget_s: float = DEFAULT_TIME_BUDGET_S,
) -> FastAPI:
    """Application serving ``graph_path``; without a graph every query is 404."""
    app = FastAPI(title="saferoutes")

    graph: RoutingGraph | None = None
    scale: CategoryScale | None = None
    if graph_path is not None:
        graph, scale = load_graph(graph_path)
        logger.info(
            "loaded graph %s: %d nodes, %d edges", graph_path, graph.node_count, graph.edge_count
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        # Undecodable bodies are the client's formatting problem (400); bodies
        # that parse but do not fit the schema are semantic problems (422).
        malformed = any(e.get("type") == "json_invalid" for e in exc.errors())
        return JSONResponse(
            status_code=400 if malformed else 422,
            content={"detail": exc.errors()},
        )

    def _require_graph() -> tuple[RoutingGraph, CategoryScale]:
        if graph is None or scale is None:
            raise HTTPException(status_code=404, detail="no graph loaded")
        return graph, scale

    @app.get("/api/graph/meta")
    def graph_meta() -> dict:
        g, s = _require_graph()
        min_lat, min_lon, max_lat, max_lon = g.bbox()
        return {
            "K": s.size,
            "labels": list(s.labels),
            "colors": list(s.colors),
            "node_count": g.node_count,
            "edge_count": g.edge_count,
            "bbox": [min_lon, min_lat, max_lon, max_lat],
        }

    @app.post("/api/routes")
    def routes(request: RoutesRequest) -> dict:
        g, s = _require_graph()
        for weight in request.weights:
            if weight < 1.0:
                raise HTTPException(
                    status_code=422, detail=f"detour weights must be >= 1, got {weight}"
                )
        try:
            query = RouteQuery(
                _point(request.origin, "from"),
                _point(request.destination, "to"),
                WeightVector(tuple(request.weights)),
                request.bbox_dist,
            )
            result = execute_query(g, s, query, time_budget_s=time_budget_s)
        except (DimensionError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except SolveBudgetExceeded as exc:
            raise HTTPException(status_code=503, detail=str(exc)) from exc
        payload = {
            "routes": feature_collection(result.solutions, s),
            "summary": summary_payload(result.summary),
        }
        if result.note:
            payload["note"] = result.note
        return payload

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def app_from_env() -> FastAPI:
    """Application configured from GRAPH_PATH, for ``uvicorn saferoutes.service:...``."""
    return create_app(os.environ.get("GRAPH_PATH"))
