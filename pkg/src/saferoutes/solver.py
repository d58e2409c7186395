"""Multiobjective route search.

A label-setting search in the style of classical shortest-path algorithms,
except that each node keeps a frontier of mutually nondominated partial
routes instead of a single best distance.  Labels leave the queue in
lexicographic cost order, so any label that could dominate another is settled
first; the result is one efficient route per nondominated cost vector.

``brute_force_paths`` enumerates all simple paths instead and exists purely
to validate the search on small graphs.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from heapq import heappop, heappush
from statistics import fmean

from .graph import GraphEdge, RoutingGraph
from .ordinal import (
    CategoryScale,
    CostVector,
    WeightVector,
    accumulate,
    close_components,
    dominates_components,
    weighted_indicator,
    pareto_filter,
)


class NodeNotFoundError(KeyError):
    """Route endpoint is not a node of the graph."""


class GraphTooLargeError(RuntimeError):
    """The exhaustive enumeration would visit too many paths."""


class SolveBudgetExceeded(RuntimeError):
    """The search ran past its time budget."""


#: Simple-path budget of the enumeration oracle.
MAX_ORACLE_PATHS = 1_000_000

#: How many queue pops pass between clock checks when a budget is set.
_BUDGET_CHECK_MASK = 0xFF


@dataclass(frozen=True, eq=False)
class Label:
    """Partial route ending at ``node`` with accumulated weighted cost."""

    node: int
    cost: tuple[float, ...]
    parent: Label | None
    via_edge: GraphEdge | None


@dataclass(frozen=True)
class RouteSolution:
    """One efficient route, with both the weighted and the plain cost vector."""

    nodes: tuple[int, ...]
    edges: tuple[GraphEdge, ...]
    weighted_cost: CostVector
    unweighted_cost: CostVector

    @property
    def total_length_m(self) -> float:
        # Component 1 of the unweighted vector is the plain length by construction.
        return self.unweighted_cost.components[0]


@dataclass(frozen=True)
class SweepRow:
    """Result of one uniform-weight run in a weight sweep."""

    weight: float
    route_count: int
    mean_length_m: float | None
    runtime_s: float


def _dominated_or_matched(cost: tuple[float, ...], frontier: list[Label]) -> bool:
    return any(
        dominates_components(label.cost, cost) or close_components(label.cost, cost)
        for label in frontier
    )


def _reconstruct(label: Label, weights: WeightVector, scale: CategoryScale) -> RouteSolution:
    edges: list[GraphEdge] = []
    cursor: Label | None = label
    while cursor is not None and cursor.via_edge is not None:
        edges.append(cursor.via_edge)
        cursor = cursor.parent
    edges.reverse()
    nodes = [edges[0].from_node] if edges else [label.node]
    nodes.extend(edge.to_node for edge in edges)
    unweighted = accumulate(
        (edge.cost for edge in edges), WeightVector.ones(len(weights)), scale
    )
    return RouteSolution(tuple(nodes), tuple(edges), CostVector(label.cost), unweighted)


def solve(
    graph: RoutingGraph,
    source: int,
    target: int,
    weights: WeightVector,
    *,
    time_budget_s: float | None = None,
) -> list[RouteSolution]:
    """All efficient routes from ``source`` to ``target`` under ``weights``.

    Labels are settled in lexicographic cost order (ties broken by node id,
    then by creation order, so runs are reproducible).  A popped label is
    dropped when the target frontier or its own node's frontier dominates or
    matches it; otherwise it is settled, evicts frontier entries it dominates
    and is extended along every outgoing edge.  The search ends when the
    queue drains; the surviving target frontier, in settle order, is the
    answer.  ``source == target`` yields the empty route with zero cost.

    With a ``time_budget_s`` the search checks the clock periodically and
    raises :class:`SolveBudgetExceeded` once the budget is spent.
    """
    if source not in graph.nodes:
        raise NodeNotFoundError(f"source node {source} not in graph")
    if target not in graph.nodes:
        raise NodeNotFoundError(f"target node {target} not in graph")

    size = len(weights) + 1
    scale = CategoryScale.of_size(size)
    factors: dict[int, tuple[float, ...]] = {}

    deadline = None if time_budget_s is None else time.monotonic() + time_budget_s
    sequence = itertools.count()
    root = Label(source, (0.0,) * size, None, None)
    queue: list[tuple[tuple[float, ...], int, int, Label]] = [
        (root.cost, source, next(sequence), root)
    ]
    frontiers: dict[int, list[Label]] = {target: []}
    target_frontier = frontiers[target]

    pops = 0
    while queue:
        if deadline is not None and (pops & _BUDGET_CHECK_MASK) == 0:
            if time.monotonic() > deadline:
                raise SolveBudgetExceeded(f"route search exceeded {time_budget_s} s")
        pops += 1

        cost, _, _, label = heappop(queue)
        if _dominated_or_matched(cost, target_frontier):
            continue
        frontier = frontiers.setdefault(label.node, [])
        if label.node != target and _dominated_or_matched(cost, frontier):
            continue
        frontier[:] = [
            settled
            for settled in frontier
            if not dominates_components(cost, settled.cost)
        ]
        frontier.append(label)

        for edge in graph.out_edges(label.node):
            indicator = factors.get(edge.cost.category.index)
            if indicator is None:
                indicator = weighted_indicator(edge.cost.category, weights, scale).components
                factors[edge.cost.category.index] = indicator
            extended = tuple(
                c + edge.cost.length_m * f for c, f in zip(cost, indicator)
            )
            assert all(e >= c for e, c in zip(extended, cost))
            child = Label(edge.to_node, extended, label, edge)
            heappush(queue, (extended, edge.to_node, next(sequence), child))

    return [_reconstruct(label, weights, scale) for label in target_frontier]


def brute_force_paths(
    graph: RoutingGraph,
    source: int,
    target: int,
    weights: WeightVector,
    *,
    max_paths: int = MAX_ORACLE_PATHS,
) -> list[tuple[CostVector, tuple[int, ...]]]:
    """Nondominated cost vectors by exhaustive simple-path enumeration.

    Validation oracle for small graphs only: enumeration stops with
    :class:`GraphTooLargeError` once more than ``max_paths`` simple paths
    show up.  Returns (vector, node sequence) pairs.
    """
    if source not in graph.nodes:
        raise NodeNotFoundError(f"source node {source} not in graph")
    if target not in graph.nodes:
        raise NodeNotFoundError(f"target node {target} not in graph")

    size = len(weights) + 1
    scale = CategoryScale.of_size(size)
    found: list[tuple[CostVector, tuple[int, ...]]] = []
    path_nodes: list[int] = [source]
    path_edges: list[GraphEdge] = []
    on_path = {source}

    def visit(node: int) -> None:
        if node == target:
            vector = accumulate((e.cost for e in path_edges), weights, scale)
            found.append((vector, tuple(path_nodes)))
            if len(found) > max_paths:
                raise GraphTooLargeError(
                    f"more than {max_paths} simple paths between {source} and {target}"
                )
            return
        for edge in graph.out_edges(node):
            if edge.to_node in on_path:
                continue
            on_path.add(edge.to_node)
            path_nodes.append(edge.to_node)
            path_edges.append(edge)
            visit(edge.to_node)
            on_path.discard(edge.to_node)
            path_nodes.pop()
            path_edges.pop()

    visit(source)
    return pareto_filter(found)


def sweep_weights(
    graph: RoutingGraph,
    source: int,
    target: int,
    weight_values: list[float],
    scale: CategoryScale,
) -> list[SweepRow]:
    """Route count, mean length and runtime per uniform detour weight."""
    rows = []
    for weight in weight_values:
        weights = WeightVector.uniform(weight, scale.size - 1)
        started = time.perf_counter()
        solutions = solve(graph, source, target, weights)
        runtime = time.perf_counter() - started
        mean_length = (
            fmean(s.total_length_m for s in solutions) if solutions else None
        )
        rows.append(SweepRow(weight, len(solutions), mean_length, runtime))
    return rows
