"""Input data model and topology generation for metro transport planning.

A :class:`NetworkScenario` describes a three-tier metro/aggregation network:
HL4 access nodes source the traffic, HL3 nodes optionally groom it, HL1/2
nodes terminate it toward CDN/IXP peers. The scenario is the single input
record for dimensioning, spectrum feasibility and costing; this module
validates it, turns it into a :class:`PhysicalTopology` (tree or ring) and
reads/writes the scenario JSON format (strict: unknown fields are rejected).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path


class ScenarioError(ValueError):
    """Raised for invalid scenario values or malformed scenario files."""


class TopologyKind(str, Enum):
    TREE = "tree"
    RING = "ring"


class HierarchyLevel(str, Enum):
    HL12 = "HL12"
    HL3 = "HL3"
    HL4 = "HL4"


@dataclass(frozen=True)
class NetworkScenario:
    """Node counts, traffic and equipment parameters for one planning run.

    ``h4 >= h3 >= h12 >= 1``; ratios between adjacent tiers may be
    fractional, the generators and dimensioners absorb remainders.
    """

    h4: int
    h3: int
    h12: int
    a4_gbps: float
    eta: float
    channel_rate_gbps: float = 400.0
    fanout_m: int = 4
    topology_kind: TopologyKind = TopologyKind.TREE
    link_length_km: float = 50.0


#: required keys of the scenario JSON document
REQUIRED_FIELDS = ("h4", "h3", "h12", "a4_gbps", "eta")
#: optional keys and their defaults
OPTIONAL_FIELDS = {
    "channel_rate_gbps": 400.0,
    "fanout_m": 4,
    "topology_kind": "tree",
    "link_length_km": 50.0,
}


def _require_count(name: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"{name} must be a positive integer, got {value!r}")
    return value


def validate(scenario: NetworkScenario) -> NetworkScenario:
    """Check every scenario invariant; return the scenario unchanged.

    Raises :class:`ScenarioError` naming the first offending field.
    """
    for name in ("h4", "h3", "h12"):
        if _require_count(name, getattr(scenario, name)) < 1:
            raise ScenarioError(f"{name} must be >= 1, got {getattr(scenario, name)}")
    if scenario.h3 > scenario.h4:
        raise ScenarioError(f"h3 exceeds h4 (h3={scenario.h3}, h4={scenario.h4})")
    if scenario.h12 > scenario.h3:
        raise ScenarioError(f"h12 exceeds h3 (h12={scenario.h12}, h3={scenario.h3})")
    if not scenario.a4_gbps >= 0:
        raise ScenarioError(f"a4_gbps must be non-negative, got {scenario.a4_gbps}")
    if not 0.0 <= scenario.eta <= 1.0:
        raise ScenarioError(f"eta out of range: {scenario.eta} (expected 0 <= eta <= 1)")
    if not scenario.channel_rate_gbps > 0:
        raise ScenarioError(
            f"channel_rate_gbps must be positive, got {scenario.channel_rate_gbps}"
        )
    if _require_count("fanout_m", scenario.fanout_m) < 1:
        raise ScenarioError(f"fanout_m must be >= 1, got {scenario.fanout_m}")
    if not isinstance(scenario.topology_kind, TopologyKind):
        raise ScenarioError(f"topology_kind must be a TopologyKind, got {scenario.topology_kind!r}")
    if not scenario.link_length_km > 0:
        raise ScenarioError(f"link_length_km must be positive, got {scenario.link_length_km}")
    return scenario


@dataclass(frozen=True)
class Node:
    id: str
    level: HierarchyLevel


@dataclass(frozen=True)
class Link:
    a: str
    b: str
    length_km: float

    @property
    def key(self) -> tuple[str, str]:
        """Canonical undirected endpoint pair."""
        return (self.a, self.b) if self.a <= self.b else (self.b, self.a)


@dataclass(frozen=True)
class PhysicalTopology:
    """Generated node/link graph; nodes carry their hierarchy level."""

    nodes: tuple[Node, ...]
    links: tuple[Link, ...]

    def level_of(self, node_id: str) -> HierarchyLevel:
        return self._levels()[node_id]

    def nodes_at(self, level: HierarchyLevel) -> tuple[str, ...]:
        return tuple(n.id for n in self.nodes if n.level is level)

    def adjacency(self) -> dict[str, tuple[str, ...]]:
        """Neighbor ids per node, sorted for deterministic traversal."""
        nbrs: dict[str, list[str]] = {n.id: [] for n in self.nodes}
        for link in self.links:
            nbrs[link.a].append(link.b)
            nbrs[link.b].append(link.a)
        return {nid: tuple(sorted(ns)) for nid, ns in nbrs.items()}

    def link_lengths(self) -> dict[tuple[str, str], float]:
        return {link.key: link.length_km for link in self.links}

    def hl3_parent_map(self) -> dict[str, str]:
        """HL4 node id -> the HL3 node it hangs off."""
        levels = self._levels()
        parents: dict[str, str] = {}
        for link in self.links:
            pair = {levels[link.a]: link.a, levels[link.b]: link.b}
            if set(pair) == {HierarchyLevel.HL4, HierarchyLevel.HL3}:
                parents[pair[HierarchyLevel.HL4]] = pair[HierarchyLevel.HL3]
        return parents

    def hl12_hub_map(self) -> dict[str, str]:
        """HL3 node id -> its HL1/2 hub.

        The hub is the nearest HL12 over the HL3/HL12 subgraph (hop count,
        ties broken by smaller node id). In a tree this is the direct parent.
        """
        levels = self._levels()
        adj = self.adjacency()
        hubs: dict[str, str] = {}
        for hl3 in self.nodes_at(HierarchyLevel.HL3):
            hubs[hl3] = self._nearest_hl12(hl3, adj, levels)
        return hubs

    def spokes_per_hub(self) -> dict[str, int]:
        """Number of HL4 nodes whose traffic lands on each HL12 hub."""
        parents = self.hl3_parent_map()
        hubs = self.hl12_hub_map()
        counts = {hl12: 0 for hl12 in self.nodes_at(HierarchyLevel.HL12)}
        for hl4 in self.nodes_at(HierarchyLevel.HL4):
            counts[hubs[parents[hl4]]] += 1
        return counts

    def _levels(self) -> dict[str, HierarchyLevel]:
        return {n.id: n.level for n in self.nodes}

    def _nearest_hl12(self, start: str, adj, levels) -> str:
        seen = {start}
        frontier = [start]
        while frontier:
            found = sorted(n for n in frontier if levels[n] is HierarchyLevel.HL12)
            if found:
                return found[0]
            nxt = []
            for node in frontier:
                for nbr in adj[node]:
                    if nbr not in seen and levels[nbr] is not HierarchyLevel.HL4:
                        seen.add(nbr)
                        nxt.append(nbr)
            frontier = nxt
        raise ScenarioError(f"no HL12 node reachable from {start}")


def generate_topology(scenario: NetworkScenario) -> PhysicalTopology:
    """Build the physical graph for a validated scenario.

    Tree: HL4 ``i`` attaches to HL3 ``floor(i*h3/h4)`` and HL3 ``j`` to HL12
    ``floor(j*h12/h3)`` (round-robin balanced, children per parent differ by
    at most one). Ring: the HL3 and HL12 nodes form one cycle with the HL12
    nodes evenly spaced, HL4 nodes attach as leaves balanced across HL3s.
    A two-node "cycle" degenerates to a single link. Every link gets
    ``link_length_km``. Deterministic: equal scenarios give equal topologies.
    """
    validate(scenario)
    length = scenario.link_length_km
    hl12_ids = [f"hl12-{k}" for k in range(scenario.h12)]
    hl3_ids = [f"hl3-{j}" for j in range(scenario.h3)]
    hl4_ids = [f"hl4-{i}" for i in range(scenario.h4)]

    nodes = tuple(
        [Node(nid, HierarchyLevel.HL12) for nid in hl12_ids]
        + [Node(nid, HierarchyLevel.HL3) for nid in hl3_ids]
        + [Node(nid, HierarchyLevel.HL4) for nid in hl4_ids]
    )

    links: list[Link] = []
    if scenario.topology_kind is TopologyKind.TREE:
        for j, hl3 in enumerate(hl3_ids):
            links.append(Link(hl3, hl12_ids[j * scenario.h12 // scenario.h3], length))
    else:
        cycle_len = scenario.h3 + scenario.h12
        positions: list[str | None] = [None] * cycle_len
        for k, hl12 in enumerate(hl12_ids):
            positions[k * cycle_len // scenario.h12] = hl12
        it = iter(hl3_ids)
        cycle = [slot if slot is not None else next(it) for slot in positions]
        if cycle_len == 2:
            links.append(Link(cycle[0], cycle[1], length))
        else:
            for t in range(cycle_len):
                links.append(Link(cycle[t], cycle[(t + 1) % cycle_len], length))
    for i, hl4 in enumerate(hl4_ids):
        links.append(Link(hl4, hl3_ids[i * scenario.h3 // scenario.h4], length))

    return PhysicalTopology(nodes=nodes, links=tuple(links))


def _coerce(name: str, value: object) -> object:
    if name in ("h4", "h3", "h12", "fanout_m"):
        if isinstance(value, bool):
            raise ScenarioError(f"{name} must be an integer, got {value!r}")
        if isinstance(value, float) and value.is_integer():
            return int(value)
        if not isinstance(value, int):
            raise ScenarioError(f"{name} must be an integer, got {value!r}")
        return value
    if name in ("a4_gbps", "eta", "channel_rate_gbps", "link_length_km"):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioError(f"{name} must be a number, got {value!r}")
        return float(value)
    if name == "topology_kind":
        try:
            return TopologyKind(value)
        except ValueError:
            choices = "|".join(k.value for k in TopologyKind)
            raise ScenarioError(f"topology_kind must be one of {choices}, got {value!r}") from None
    raise ScenarioError(f"unknown field: {name}")


def scenario_from_json(text: str) -> NetworkScenario:
    """Parse and validate a scenario JSON document (strict)."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ScenarioError("scenario document must be a JSON object")

    known = set(REQUIRED_FIELDS) | set(OPTIONAL_FIELDS)
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ScenarioError(f"unknown field(s): {', '.join(unknown)}")
    missing = [name for name in REQUIRED_FIELDS if name not in raw]
    if missing:
        raise ScenarioError(f"missing required field(s): {', '.join(missing)}")

    values = {name: _coerce(name, raw[name]) for name in raw}
    for name, default in OPTIONAL_FIELDS.items():
        values.setdefault(name, _coerce(name, default))
    return validate(NetworkScenario(**values))


def scenario_to_json(scenario: NetworkScenario) -> str:
    doc = {
        "h4": scenario.h4,
        "h3": scenario.h3,
        "h12": scenario.h12,
        "a4_gbps": scenario.a4_gbps,
        "eta": scenario.eta,
        "channel_rate_gbps": scenario.channel_rate_gbps,
        "fanout_m": scenario.fanout_m,
        "topology_kind": scenario.topology_kind.value,
        "link_length_km": scenario.link_length_km,
    }
    return json.dumps(doc, indent=2) + "\n"


def load_scenario(path: str | Path) -> NetworkScenario:
    return scenario_from_json(Path(path).read_text(encoding="utf-8"))


def save_scenario(scenario: NetworkScenario, path: str | Path) -> None:
    Path(path).write_text(scenario_to_json(scenario), encoding="utf-8")
