"""OSM extract ingestion.

Parses OSM XML into raw nodes and ways, decides which ways are rideable,
grades each way on the four-step safety scale and builds the directed
routing graph.  The tag rules live in an :class:`IngestConfig` so deployments
can adjust them without code changes; the defaults below match common OSM
tagging practice for cycling infrastructure.
"""

from __future__ import annotations

import json
import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import IO, Iterable, Mapping

from .graph import GeoPoint, GraphEdge, GraphNode, RoutingGraph, dedupe_parallel_edges, haversine_m
from .ordinal import Category, EdgeCost

logger = logging.getLogger(__name__)


class OsmParseError(ValueError):
    """The OSM document is not well-formed XML."""


@dataclass(frozen=True)
class RawNode:
    id: int
    lat: float
    lon: float


@dataclass(frozen=True)
class RawWay:
    id: int
    node_refs: tuple[int, ...]
    tags: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "node_refs", tuple(self.node_refs))
        object.__setattr__(self, "tags", dict(self.tags))


@dataclass(frozen=True)
class IngestConfig:
    """Tag rules for way filtering and safety grading.

    All value matching is case-insensitive after trimming.  Any subset of the
    fields may be overridden from a JSON file whose keys mirror the field
    names; missing keys keep their defaults.
    """

    #: highway values that are never rideable
    excluded_highways: frozenset[str] = frozenset({"motorway", "motorway_link", "steps"})
    #: bicycle values that ban bikes outright
    excluded_bicycle_values: frozenset[str] = frozenset({"no"})
    #: access values that close the way to the public
    excluded_access_values: frozenset[str] = frozenset({"private"})
    #: tag keys announcing some form of cycling infrastructure
    cycleway_keys: tuple[str, ...] = (
        "bicycle",
        "cycleway",
        "cycleway:left",
        "cycleway:right",
        "bicycle_road",
        "cycleway:right:bicycle",
        "cycleway:left:bicycle",
    )
    #: values of those keys that explicitly negate the infrastructure
    cycleway_off_values: frozenset[str] = frozenset({"none"})
    #: keys whose value can mark the infrastructure as physically separated
    separated_keys: tuple[str, ...] = ("bicycle", "bicycle_road")
    #: values of those keys that count as separated
    separated_values: frozenset[str] = frozenset({"yes", "designated"})
    #: highway values of calm streets that are fine without infrastructure
    quiet_highways: frozenset[str] = frozenset(
        {"residential", "living_street", "track", "bridleway"}
    )

    @classmethod
    def from_file(cls, path: str | Path) -> IngestConfig:
        """Defaults overridden by the JSON object at ``path``."""
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls.from_payload(payload)

    @classmethod
    def from_payload(cls, payload: Mapping) -> IngestConfig:
        known = {f.name: f.type for f in fields(cls)}
        overrides = {}
        for key, value in payload.items():
            if key not in known:
                raise ValueError(f"unknown ingest config key: {key}")
            container = frozenset if "frozenset" in str(known[key]) else tuple
            overrides[key] = container(str(v) for v in value)
        return replace(cls(), **overrides)


DEFAULT_CONFIG = IngestConfig()


def parse_osm_xml(source: bytes | str | IO[bytes]) -> tuple[list[RawNode], list[RawWay]]:
    """Raw nodes and ways of an OSM XML document, tags preserved verbatim.

    Ways referencing nodes the document does not contain are dropped with a
    warning, so the returned ways are safe to build a graph from.
    """
    try:
        if isinstance(source, (bytes, str)):
            root = ET.fromstring(source)
        else:
            root = ET.parse(source).getroot()
    except ET.ParseError as exc:
        line, column = exc.position
        raise OsmParseError(
            f"malformed OSM XML at line {line}, column {column}: {exc.msg}"
        ) from exc

    nodes: list[RawNode] = []
    ways: list[RawWay] = []
    for element in root:
        if element.tag == "node":
            nodes.append(
                RawNode(
                    int(element.attrib["id"]),
                    float(element.attrib["lat"]),
                    float(element.attrib["lon"]),
                )
            )
        elif element.tag == "way":
            refs = tuple(int(nd.attrib["ref"]) for nd in element.findall("nd"))
            tags = {tag.attrib["k"]: tag.attrib["v"] for tag in element.findall("tag")}
            ways.append(RawWay(int(element.attrib["id"]), refs, tags))

    known_ids = {node.id for node in nodes}
    kept: list[RawWay] = []
    for way in ways:
        missing = [ref for ref in way.node_refs if ref not in known_ids]
        if missing:
            logger.warning(
                "way %d references missing node(s) %s, dropped", way.id, missing
            )
            continue
        kept.append(way)
    return nodes, kept


def _value(tags: Mapping[str, str], key: str) -> str | None:
    raw = tags.get(key)
    return raw.strip().lower() if raw is not None else None


def bike_filter(tags: Mapping[str, str], config: IngestConfig = DEFAULT_CONFIG) -> bool:
    """True when a way with these tags is open to bicycles.

    Only tagged highways qualify; the exclusion lists then knock out
    motorways and stairs, explicit bicycle bans and private access.
    """
    highway = _value(tags, "highway")
    if highway is None:
        return False
    if highway in config.excluded_highways:
        return False
    if _value(tags, "bicycle") in config.excluded_bicycle_values:
        return False
    if _value(tags, "access") in config.excluded_access_values:
        return False
    return True


def categorize(tags: Mapping[str, str], config: IngestConfig = DEFAULT_CONFIG) -> Category:
    """Safety category of a rideable way, from 1 (best) to 4.

    Separated cycling infrastructure is category 1, any other cycling
    infrastructure category 2, calm streets without infrastructure category 3
    and everything else category 4.
    """
    has_cycleway = any(
        _value(tags, key) is not None and _value(tags, key) not in config.cycleway_off_values
        for key in config.cycleway_keys
    )
    separated = any(
        _value(tags, key) in config.separated_values for key in config.separated_keys
    )
    if has_cycleway and separated:
        return Category(1)
    if has_cycleway:
        return Category(2)
    if _value(tags, "highway") in config.quiet_highways:
        return Category(3)
    return Category(4)


def _is_oneway(tags: Mapping[str, str]) -> bool:
    if _value(tags, "oneway") not in {"yes", "true", "1"}:
        return False
    # Contraflow cycling lifts the restriction for bikes.
    return _value(tags, "oneway:bicycle") != "no"


def build_graph(
    nodes: Iterable[RawNode],
    ways: Iterable[RawWay],
    config: IngestConfig = DEFAULT_CONFIG,
) -> RoutingGraph:
    """Directed routing graph of all rideable ways, parallel edges deduplicated.

    Every consecutive node pair of a way becomes an edge, plus the reverse
    edge unless the way is one-way for bikes.  Segments between coincident
    coordinates are skipped; only nodes actually used by an edge are kept.
    """
    positions = {node.id: GeoPoint(node.lat, node.lon) for node in nodes}
    edges: list[GraphEdge] = []
    for way in ways:
        if not bike_filter(way.tags, config):
            continue
        category = categorize(way.tags, config)
        both_ways = not _is_oneway(way.tags)
        for a, b in zip(way.node_refs, way.node_refs[1:]):
            start, end = positions[a], positions[b]
            length = haversine_m(start, end)
            if length <= 0.0:
                logger.warning(
                    "way %d: zero-length segment %d->%d skipped", way.id, a, b
                )
                continue
            edges.append(GraphEdge(a, b, EdgeCost(length, category), (start, end)))
            if both_ways:
                edges.append(GraphEdge(b, a, EdgeCost(length, category), (end, start)))

    used = {edge.from_node for edge in edges} | {edge.to_node for edge in edges}
    graph = RoutingGraph.from_edges(
        (GraphNode(nid, positions[nid]) for nid in used), edges
    )
    return dedupe_parallel_edges(graph)
