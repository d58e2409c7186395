"""Shared fixtures: hand-built graphs, a synthetic city grid and a random
instance generator used by both the unit and the acceptance tests."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from saferoutes import (
    Category,
    CategoryScale,
    EdgeCost,
    GeoPoint,
    GraphEdge,
    GraphNode,
    RoutingGraph,
    WeightVector,
    save_graph,
)

DATA_DIR = Path(__file__).parent / "data"


def build_test_graph(
    coords: dict[int, tuple[float, float]],
    edge_specs: list[tuple[int, int, float, int]],
) -> RoutingGraph:
    """Graph from (node -> (lat, lon)) and (from, to, length_m, category) rows.

    Geometry is the straight segment between the nodes; lengths are taken as
    given, which keeps expected cost vectors exact in tests.
    """
    nodes = [GraphNode(nid, GeoPoint(lat, lon)) for nid, (lat, lon) in coords.items()]
    positions = {n.id: n.position for n in nodes}
    edges = [
        GraphEdge(a, b, EdgeCost(length, Category(cat)), (positions[a], positions[b]))
        for a, b, length, cat in edge_specs
    ]
    return RoutingGraph.from_edges(nodes, edges)


DIAMOND_COORDS = {
    1: (48.7800, 9.1800),  # source
    2: (48.7805, 9.1807),  # upper intermediate
    3: (48.7795, 9.1807),  # lower intermediate
    4: (48.7810, 9.1814),  # target
}

DIAMOND_EDGES = [
    (1, 2, 100.0, 1),
    (2, 4, 100.0, 2),
    (1, 3, 150.0, 1),
    (3, 4, 150.0, 1),
]


@pytest.fixture()
def diamond() -> tuple[RoutingGraph, CategoryScale]:
    """Two s-t paths: 100 m best + 100 m second-best versus 300 m all-best."""
    return build_test_graph(DIAMOND_COORDS, DIAMOND_EDGES), CategoryScale.of_size(2)


@pytest.fixture(scope="session")
def diamond_graph_file(tmp_path_factory) -> Path:
    graph = build_test_graph(DIAMOND_COORDS, DIAMOND_EDGES)
    path = tmp_path_factory.mktemp("graphs") / "diamond.json"
    save_graph(path, graph, CategoryScale.of_size(2))
    return path


GRID_ROWS = 4
GRID_COLS = 5


def build_city_grid() -> RoutingGraph:
    """20-node city grid with mixed categories on a 4-step scale.

    Categories and lengths follow fixed formulas so every run sees the same
    network; both directions of each street share length and category.
    """
    coords = {}
    for row in range(GRID_ROWS):
        for col in range(GRID_COLS):
            nid = row * GRID_COLS + col + 1
            coords[nid] = (48.7800 + 0.0009 * row, 9.1800 + 0.0013 * col)
    edges = []
    for row in range(GRID_ROWS):
        for col in range(GRID_COLS):
            nid = row * GRID_COLS + col + 1
            if col + 1 < GRID_COLS:
                other = nid + 1
                length = 100.0 + 10.0 * ((row + col) % 3)
                cat = ((row + col) % 4) + 1
                edges.append((nid, other, length, cat))
                edges.append((other, nid, length, cat))
            if row + 1 < GRID_ROWS:
                other = nid + GRID_COLS
                length = 95.0 + 12.0 * ((row * col) % 3)
                cat = ((2 * row + col) % 4) + 1
                edges.append((nid, other, length, cat))
                edges.append((other, nid, length, cat))
    return build_test_graph(coords, edges)


@pytest.fixture()
def city_grid() -> tuple[RoutingGraph, CategoryScale]:
    return build_city_grid(), CategoryScale.of_size(4)


def random_instance(
    rng: random.Random, size: int
) -> tuple[RoutingGraph, int, int, WeightVector]:
    """Random connected digraph of at most 12 nodes and 30 edges.

    A spine path through every node guarantees the source reaches the target;
    extra random edges are added on top, at most one per ordered node pair.
    """
    node_count = rng.randint(2, 12)
    ids = list(range(1, node_count + 1))
    coords = {
        nid: (48.0 + 0.0010 * ((nid - 1) // 4), 9.0 + 0.0010 * ((nid - 1) % 4))
        for nid in ids
    }
    order = ids[:]
    rng.shuffle(order)

    pairs: set[tuple[int, int]] = set()
    specs: list[tuple[int, int, float, int]] = []

    def add_edge(a: int, b: int) -> None:
        if a == b or (a, b) in pairs:
            return
        pairs.add((a, b))
        specs.append((a, b, rng.uniform(1.0, 1000.0), rng.randint(1, size)))

    for a, b in zip(order, order[1:]):
        add_edge(a, b)
    for _ in range(rng.randint(0, 30 - len(specs))):
        add_edge(rng.choice(ids), rng.choice(ids))

    weights = WeightVector(tuple(rng.uniform(1.0, 4.0) for _ in range(size - 1)))
    return build_test_graph(coords, specs), order[0], order[-1], weights
