"""GeoJSON emission for route sets.

One feature per efficient route.  The geometry is a MultiLineString with one
part per traversed edge, and ``leg_categories`` lists the safety category of
each part in the same order, which is what a map client needs to color route
legs individually.  Positions are emitted longitude first.
"""

from __future__ import annotations

from typing import Sequence

from .ordinal import CategoryScale
from .query import RouteSetSummary
from .solver import RouteSolution

#: Meter values are rounded to centimeters, coordinates to about a centimeter,
#: so emitted documents are stable enough to pin in golden files.
_METER_DECIMALS = 2
_COORD_DECIMALS = 7


def _round_m(value: float) -> float:
    return round(value, _METER_DECIMALS)


def category_breakdown_m(solution: RouteSolution, scale: CategoryScale) -> list[float]:
    """Meters ridden per category; sums to the total route length."""
    totals = [0.0] * scale.size
    for edge in solution.edges:
        totals[edge.cost.category.index - 1] += edge.cost.length_m
    return totals


def route_feature(solution: RouteSolution, scale: CategoryScale, route_id: int) -> dict:
    coordinates = [
        [
            [round(p.lon, _COORD_DECIMALS), round(p.lat, _COORD_DECIMALS)]
            for p in edge.geometry
        ]
        for edge in solution.edges
    ]
    return {
        "type": "Feature",
        "geometry": {"type": "MultiLineString", "coordinates": coordinates},
        "properties": {
            "route_id": route_id,
            "total_length_m": _round_m(solution.total_length_m),
            "weighted_cost": [_round_m(c) for c in solution.weighted_cost],
            "unweighted_cost": [_round_m(c) for c in solution.unweighted_cost],
            "category_breakdown_m": [
                _round_m(c) for c in category_breakdown_m(solution, scale)
            ],
            "leg_categories": [edge.cost.category.index for edge in solution.edges],
        },
    }


def feature_collection(
    solutions: Sequence[RouteSolution], scale: CategoryScale
) -> dict:
    return {
        "type": "FeatureCollection",
        "features": [
            route_feature(solution, scale, i) for i, solution in enumerate(solutions)
        ],
    }


def route_table(solutions: Sequence[RouteSolution], scale: CategoryScale) -> str:
    """Tab-separated table, one row per route, plain then weighted components."""
    headers = (
        ["route", "total_length_m"]
        + [f"plain{i}" for i in range(1, scale.size + 1)]
        + [f"weighted{i}" for i in range(1, scale.size + 1)]
    )
    lines = ["\t".join(headers)]
    for i, solution in enumerate(solutions):
        cells = [str(i), f"{solution.total_length_m:.2f}"]
        cells += [f"{c:.2f}" for c in solution.unweighted_cost]
        cells += [f"{c:.2f}" for c in solution.weighted_cost]
        lines.append("\t".join(cells))
    return "\n".join(lines)


def summary_payload(summary: RouteSetSummary) -> dict:
    mean = summary.mean_length_m
    return {
        "count": summary.count,
        "mean_length_m": _round_m(mean) if mean is not None else None,
        "runtime_s": round(summary.runtime_s, 4),
    }
