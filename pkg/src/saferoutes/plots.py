"""Figure rendering for the report paths of the CLI.

Every function draws onto a fresh matplotlib figure and writes it straight
to a file; the Agg backend keeps this working on headless machines.  Edges
are drawn in their category color so the safety structure of a network or a
route is visible at a glance.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.lines import Line2D

from .graph import RoutingGraph
from .ordinal import CategoryScale
from .solver import RouteSolution, SweepRow


def _category_legend(axis, scale: CategoryScale) -> None:
    handles = [
        Line2D([], [], color=color, linewidth=3, label=label)
        for label, color in zip(scale.labels, scale.colors)
    ]
    axis.legend(handles=handles, loc="upper right", fontsize="small")


def _setup_map_axis(axis, graph: RoutingGraph) -> None:
    min_lat, _, max_lat, _ = graph.bbox()
    mid_lat = (min_lat + max_lat) / 2.0
    # One degree of longitude shrinks with latitude; keep meters square.
    axis.set_aspect(1.0 / max(math.cos(math.radians(mid_lat)), 1e-6))
    axis.set_xlabel("longitude")
    axis.set_ylabel("latitude")


def plot_graph(graph: RoutingGraph, scale: CategoryScale, path: str | Path) -> Path:
    """Map of the whole network, edges colored by safety category."""
    fig, axis = plt.subplots(figsize=(9, 9))
    _setup_map_axis(axis, graph)
    for edge in graph.edges():
        axis.plot(
            [p.lon for p in edge.geometry],
            [p.lat for p in edge.geometry],
            color=scale.colors[edge.cost.category.index - 1],
            linewidth=1.0,
        )
    _category_legend(axis, scale)
    axis.set_title(f"{graph.node_count} nodes, {graph.edge_count} edges")
    out = Path(path)
    fig.savefig(out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return out


def plot_routes(
    graph: RoutingGraph,
    scale: CategoryScale,
    solutions: Sequence[RouteSolution],
    path: str | Path,
) -> Path:
    """Efficient routes over a gray network backdrop, legs in category colors."""
    fig, axis = plt.subplots(figsize=(9, 9))
    _setup_map_axis(axis, graph)
    for edge in graph.edges():
        axis.plot(
            [p.lon for p in edge.geometry],
            [p.lat for p in edge.geometry],
            color="0.85",
            linewidth=0.8,
            zorder=1,
        )
    for solution in solutions:
        for edge in solution.edges:
            axis.plot(
                [p.lon for p in edge.geometry],
                [p.lat for p in edge.geometry],
                color=scale.colors[edge.cost.category.index - 1],
                linewidth=2.2,
                zorder=2,
            )
        if solution.nodes:
            start = graph.nodes[solution.nodes[0]].position
            end = graph.nodes[solution.nodes[-1]].position
            axis.plot([start.lon], [start.lat], "k^", zorder=3)
            axis.plot([end.lon], [end.lat], "kv", zorder=3)
    _category_legend(axis, scale)
    axis.set_title(f"{len(solutions)} efficient route(s)")
    out = Path(path)
    fig.savefig(out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return out


def plot_sweep(rows: Sequence[SweepRow], path: str | Path) -> Path:
    """Route count and mean length against the uniform detour weight."""
    fig, count_axis = plt.subplots(figsize=(7, 4.5))
    weight_values = [row.weight for row in rows]
    count_axis.plot(weight_values, [row.route_count for row in rows], "o-", color="tab:blue")
    count_axis.set_xlabel("uniform detour weight")
    count_axis.set_ylabel("efficient routes", color="tab:blue")
    count_axis.set_xscale("log", base=2)
    if any(row.route_count > 0 for row in rows):
        count_axis.set_yscale("log")

    length_axis = count_axis.twinx()
    known = [(row.weight, row.mean_length_m) for row in rows if row.mean_length_m is not None]
    if known:
        length_axis.plot(
            [o for o, _ in known], [m for _, m in known], "s--", color="tab:red"
        )
    length_axis.set_ylabel("mean route length (m)", color="tab:red")

    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
