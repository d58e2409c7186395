"""Command line interface.

``ingest`` turns an OSM extract into a graph file, ``route`` and ``sweep``
query it, ``serve`` exposes it over HTTP.  The query commands print their
delimited document (GeoJSON or TSV) to stdout, keep human chatter on stderr
and can render a matplotlib figure of the same result next to it.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .geojson import feature_collection, route_table
from .graph import GeoPoint, load_graph, nearest_node, save_graph, simplify
from .ordinal import CategoryScale, WeightVector
from .osm import DEFAULT_CONFIG, IngestConfig, build_graph, parse_osm_xml
from .query import SNAP_WARN_M, RouteQuery, execute_query
from .solver import sweep_weights


def _parse_point(raw: str, label: str) -> GeoPoint:
    try:
        lat_text, lon_text = raw.split(",")
        return GeoPoint(float(lat_text), float(lon_text))
    except ValueError as exc:
        raise click.ClickException(f"{label} must be 'lat,lon', got {raw!r}: {exc}")


def _parse_floats(raw: str, label: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in raw.split(","))
    except ValueError as exc:
        raise click.ClickException(f"{label} must be comma-separated numbers: {exc}")


@click.group()
def main() -> None:
    """Pareto-optimal bicycle routes over safety-graded street networks."""


@main.command()
@click.option("--osm", "osm_path", type=click.Path(exists=True, path_type=Path), required=True, help="OSM XML extract to ingest.")
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), default=None, help="JSON overrides for the tag rules.")
@click.option("--out", "out_path", type=click.Path(path_type=Path), required=True, help="Graph file to write.")
@click.option("--plot", "plot_path", type=click.Path(path_type=Path), default=None, help="Also render the categorized network to this image file.")
def ingest(osm_path: Path, config_path: Path | None, out_path: Path, plot_path: Path | None) -> None:
    """Parse an OSM extract, grade it, simplify it and write the graph file."""
    config = IngestConfig.from_file(config_path) if config_path else DEFAULT_CONFIG
    with open(osm_path, "rb") as handle:
        nodes, ways = parse_osm_xml(handle)
    click.echo(f"parsed {len(nodes)} nodes, {len(ways)} ways")

    graph = build_graph(nodes, ways, config)
    click.echo(f"graph: {graph.node_count} nodes, {graph.edge_count} edges (before simplification)")
    graph = simplify(graph)
    click.echo(f"graph: {graph.node_count} nodes, {graph.edge_count} edges (after simplification)")

    scale = CategoryScale.default()
    save_graph(out_path, graph, scale)
    click.echo(f"wrote {out_path}")
    if plot_path is not None:
        from .plots import plot_graph

        plot_graph(graph, scale, plot_path)
        click.echo(f"wrote {plot_path}")


def _echo_snap_warnings(result) -> None:
    for label, snap in (("from", result.snap_origin_m), ("to", result.snap_destination_m)):
        if snap is not None and snap > SNAP_WARN_M:
            click.echo(f"warning: {label} snapped {snap:.0f} m to the nearest node", err=True)


@main.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, path_type=Path), required=True, help="Graph file from ingest.")
@click.option("--from", "from_raw", required=True, help="Start as 'lat,lon'.")
@click.option("--to", "to_raw", required=True, help="Destination as 'lat,lon'.")
@click.option("--weights", "weights_raw", required=True, help="Detour weights, one per category boundary, e.g. '1.5,2.5,1.5'.")
@click.option("--bbox", "bbox_dist", type=float, default=None, help="Clip the graph to this half-width in meters around the start.")
@click.option("--format", "output_format", type=click.Choice(["geojson", "table"]), default="geojson", help="Document printed to stdout.")
@click.option("--plot", "plot_path", type=click.Path(path_type=Path), default=None, help="Also render the route map to this image file.")
def route(
    graph_path: Path,
    from_raw: str,
    to_raw: str,
    weights_raw: str,
    bbox_dist: float | None,
    output_format: str,
    plot_path: Path | None,
) -> None:
    """Compute all efficient routes between two coordinates."""
    graph, scale = load_graph(graph_path)
    try:
        query = RouteQuery(
            _parse_point(from_raw, "--from"),
            _parse_point(to_raw, "--to"),
            WeightVector(_parse_floats(weights_raw, "--weights")),
            bbox_dist,
        )
        result = execute_query(graph, scale, query)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _echo_snap_warnings(result)

    if output_format == "geojson":
        click.echo(json.dumps(feature_collection(result.solutions, scale), indent=2))
    else:
        click.echo(route_table(result.solutions, scale))
    summary = result.summary
    mean_text = f"{summary.mean_length_m:.2f}" if summary.mean_length_m is not None else "n/a"
    click.echo(
        f"routes: {summary.count}\tmean_length_m: {mean_text}\truntime_s: {summary.runtime_s:.3f}",
        err=True,
    )
    if result.note:
        click.echo(f"note: {result.note}", err=True)

    if plot_path is not None:
        from .plots import plot_routes

        plot_routes(graph, scale, result.solutions, plot_path)
        click.echo(f"wrote {plot_path}", err=True)


@main.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, path_type=Path), required=True, help="Graph file from ingest.")
@click.option("--from", "from_raw", required=True, help="Start as 'lat,lon'.")
@click.option("--to", "to_raw", required=True, help="Destination as 'lat,lon'.")
@click.option("--weights", "weights_raw", default="1,2,4,8,16", show_default=True, help="Uniform detour weights to sweep.")
@click.option("--plot", "plot_path", type=click.Path(path_type=Path), default=None, help="Also render the sweep chart to this image file.")
def sweep(graph_path: Path, from_raw: str, to_raw: str, weights_raw: str, plot_path: Path | None) -> None:
    """Tabulate route count, mean length and runtime per uniform weight."""
    graph, scale = load_graph(graph_path)
    source = nearest_node(graph, _parse_point(from_raw, "--from"))
    target = nearest_node(graph, _parse_point(to_raw, "--to"))
    weight_values = list(_parse_floats(weights_raw, "--weights"))
    try:
        rows = sweep_weights(graph, source, target, weight_values, scale)
    except ValueError as exc:
        raise click.ClickException(str(exc))

    click.echo("weight\troutes\tmean_length_m\truntime_s")
    for row in rows:
        mean_text = f"{row.mean_length_m:.2f}" if row.mean_length_m is not None else ""
        click.echo(f"{row.weight:g}\t{row.route_count}\t{mean_text}\t{row.runtime_s:.3f}")

    if plot_path is not None:
        from .plots import plot_sweep

        plot_sweep(rows, plot_path)
        click.echo(f"wrote {plot_path}", err=True)


@main.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, path_type=Path), default=None, help="Graph file to serve; defaults to $GRAPH_PATH.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=None, help="Defaults to $PORT, then 8080.")
@click.option("--static", "static_dir", type=click.Path(path_type=Path), default=None, help="Web client bundle to serve at /.")
def serve(graph_path: Path | None, host: str, port: int | None, static_dir: Path | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import DEFAULT_PORT, create_app

    if graph_path is None:
        env_graph = os.environ.get("GRAPH_PATH")
        graph_path = Path(env_graph) if env_graph else None
    if graph_path is None:
        raise click.ClickException("no graph: pass --graph or set GRAPH_PATH")
    if port is None:
        port = int(os.environ.get("PORT", DEFAULT_PORT))
    app = create_app(graph_path, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main(prog_name="saferoutes")
