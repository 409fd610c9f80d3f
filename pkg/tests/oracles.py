"""Brute-force counting oracles, independent of the library's formulas.

Every count is produced by enumerating nodes and provisioning hardware one
module at a time (repeated subtraction with exact rationals), walking the
topology through its raw node/link lists rather than the library helpers.
"""

from __future__ import annotations

from fractions import Fraction

from mbplan.scenario import HierarchyLevel, NetworkScenario, PhysicalTopology


def modules_one_by_one(traffic_gbps, unit_capacity) -> int:
    """Provision units until the residual demand is covered."""
    residual = Fraction(traffic_gbps)
    capacity = Fraction(unit_capacity)
    count = 0
    while residual > 0:
        residual -= capacity
        count += 1
    return count


def _levels(topology: PhysicalTopology) -> dict[str, HierarchyLevel]:
    return {n.id: n.level for n in topology.nodes}


def _adjacency(topology: PhysicalTopology) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {n.id: [] for n in topology.nodes}
    for link in topology.links:
        adj[link.a].append(link.b)
        adj[link.b].append(link.a)
    return adj


def _hl3_children(topology: PhysicalTopology) -> dict[str, list[str]]:
    levels = _levels(topology)
    children: dict[str, list[str]] = {
        n.id: [] for n in topology.nodes if n.level is HierarchyLevel.HL3
    }
    for link in topology.links:
        la, lb = levels[link.a], levels[link.b]
        if {la, lb} == {HierarchyLevel.HL4, HierarchyLevel.HL3}:
            hl3 = link.a if la is HierarchyLevel.HL3 else link.b
            hl4 = link.b if la is HierarchyLevel.HL3 else link.a
            children[hl3].append(hl4)
    return children


def nearest_hl12(topology: PhysicalTopology, start: str) -> str:
    """Closest HL12 over the HL3/HL12 subgraph; ties broken by smaller id."""
    levels = _levels(topology)
    adj = _adjacency(topology)
    frontier, seen = [start], {start}
    while frontier:
        hits = sorted(n for n in frontier if levels[n] is HierarchyLevel.HL12)
        if hits:
            return hits[0]
        nxt = []
        for node in frontier:
            for nbr in adj[node]:
                if nbr not in seen and levels[nbr] is not HierarchyLevel.HL4:
                    seen.add(nbr)
                    nxt.append(nbr)
        frontier = nxt
    raise AssertionError(f"no HL12 reachable from {start}")


def grooming_oracle(s: NetworkScenario, topology: PhysicalTopology) -> dict[HierarchyLevel, int]:
    children = _hl3_children(topology)
    rate = s.channel_rate_gbps
    hl4 = hl3 = hl12 = 0
    for kids in children.values():
        for _ in kids:
            n = modules_one_by_one(s.a4_gbps, rate)
            hl4 += n
            hl3 += n  # HL3 transponder facing each HL4
        groomed = Fraction(s.eta) * Fraction(s.a4_gbps) * len(kids)
        uplink = modules_one_by_one(groomed, rate)
        hl3 += uplink
        hl12 += uplink  # 1:1 mapping of hub transponders to HL3 uplinks
    return {HierarchyLevel.HL4: hl4, HierarchyLevel.HL3: hl3, HierarchyLevel.HL12: hl12}


def continuum_oracle(s: NetworkScenario, topology: PhysicalTopology) -> dict[HierarchyLevel, int]:
    levels = _levels(topology)
    hl4 = hl12 = 0
    for node in topology.nodes:
        if node.level is HierarchyLevel.HL4:
            n = modules_one_by_one(s.a4_gbps, s.channel_rate_gbps)
            hl4 += n
            hl12 += n  # matching transponder at the hub end of each lightpath
    assert levels  # topology sanity
    return {HierarchyLevel.HL4: hl4, HierarchyLevel.HL3: 0, HierarchyLevel.HL12: hl12}


def ptmp_worked_oracle(s: NetworkScenario, topology: PhysicalTopology) -> dict[HierarchyLevel, int]:
    children = _hl3_children(topology)
    hub_traffic: dict[str, Fraction] = {}
    hl4 = 0
    for hl3, kids in children.items():
        hub = nearest_hl12(topology, hl3)
        for _ in kids:
            hl4 += modules_one_by_one(s.a4_gbps, s.channel_rate_gbps)
            hub_traffic[hub] = hub_traffic.get(hub, Fraction(0)) + Fraction(s.a4_gbps)
    hl12 = sum(modules_one_by_one(t, s.channel_rate_gbps) for t in hub_traffic.values())
    return {HierarchyLevel.HL4: hl4, HierarchyLevel.HL3: 0, HierarchyLevel.HL12: hl12}


def ptmp_formula_oracle(s: NetworkScenario) -> dict[HierarchyLevel, int]:
    slice_rate = Fraction(s.channel_rate_gbps) / s.fanout_m
    slices = 0
    for _ in range(s.h4):
        slices += modules_one_by_one(s.a4_gbps, slice_rate)
    hubs = modules_one_by_one(slices, s.fanout_m)
    return {HierarchyLevel.HL4: slices, HierarchyLevel.HL3: 0, HierarchyLevel.HL12: hubs}
