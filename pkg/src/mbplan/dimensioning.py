"""Transceiver-count models for the three transport architectures.

Counts are per hierarchy level for one scenario:

* grooming      - every HL4 hands its traffic to an HL3 router, which grooms
                  with oversubscription ``eta`` and relays to an HL12 node.
                  Per-HL3 uplink channels = ceil((h4/h3) * eta * a4 / C),
                  provisioned with transponders on both ends.
* continuum     - HL3 electronics are bypassed; each HL4 gets direct
                  lightpaths to its HL12 hub (one transponder per channel on
                  each end).
* ptmp          - as continuum, but with 1:m sliceable point-to-multipoint
                  pluggables; hub-side modules serve m spokes each.

Exact mode applies per-level ceilings (deployable hardware); approximate
mode returns the closed-form real-valued totals, which deliberately drop the
ceilings (and, for grooming, part of the HL3 term) and are never costed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .scenario import HierarchyLevel, NetworkScenario, PhysicalTopology, validate


class DimensioningError(ValueError):
    """Raised for unusable dimensioning inputs (e.g. missing topology)."""


class ArchitectureKind(str, Enum):
    GROOMING = "grooming"
    CONTINUUM = "continuum"
    PTMP = "ptmp"


class Mode(str, Enum):
    EXACT = "exact"
    APPROXIMATE = "approximate"


class PtmpCountMode(str, Enum):
    """How point-to-multipoint pluggables are counted.

    ``formula``: one pluggable per 1:m slice, ceil(A4/(C/m)) per HL4 node,
    hub side = ceil(total slices / m). ``worked-example``: one sliceable
    full-rate module per HL4 (ceil(A4/C)) and pooled hub modules,
    ceil(aggregate spoke traffic / C) per HL12 hub. The two disagree whenever
    a module's slices are not all needed; worked-example is the default.
    """

    FORMULA = "formula"
    WORKED_EXAMPLE = "worked-example"


@dataclass(frozen=True)
class DimensioningResult:
    arch: ArchitectureKind
    per_level: Mapping[HierarchyLevel, int]
    total: float
    mode: Mode
    electronic_hops_per_demand: int
    oeo_terminations_per_demand: int
    ptmp_count_mode: PtmpCountMode | None = None

    def __post_init__(self):
        if self.mode is Mode.EXACT and self.total != sum(self.per_level.values()):
            raise DimensioningError(
                f"exact total {self.total} != per-level sum {sum(self.per_level.values())}"
            )

    def to_dict(self) -> dict:
        return {
            "arch": self.arch.value,
            "per_level": {level.value: count for level, count in self.per_level.items()},
            "total": self.total,
            "mode": self.mode.value,
            "ptmp_count_mode": self.ptmp_count_mode.value if self.ptmp_count_mode else None,
            "electronic_hops_per_demand": self.electronic_hops_per_demand,
            "oeo_terminations_per_demand": self.oeo_terminations_per_demand,
        }


def channels_needed(traffic_gbps: float, channel_rate_gbps: float) -> int:
    """Smallest channel count carrying ``traffic_gbps`` at the line rate.

    Exact rational arithmetic so that exact multiples never tip over a
    ceiling boundary through float rounding.
    """
    if traffic_gbps <= 0:
        return 0
    return math.ceil(Fraction(traffic_gbps) / Fraction(channel_rate_gbps))


def grooming_uplink_channels(s: NetworkScenario) -> int:
    """Channels each HL3 provisions toward its HL12: ceil((h4/h3)*eta*a4/C)."""
    load = Fraction(s.h4, s.h3) * Fraction(s.eta) * Fraction(s.a4_gbps)
    if load <= 0:
        return 0
    return math.ceil(load / Fraction(s.channel_rate_gbps))


def dimension_grooming_exact(s: NetworkScenario) -> DimensioningResult:
    """Per-level transponders with HL3 grooming; one electronic hop, two O/E/O."""
    validate(s)
    n4 = channels_needed(s.a4_gbps, s.channel_rate_gbps)
    uplink = grooming_uplink_channels(s)
    per_level = {
        HierarchyLevel.HL4: n4 * s.h4,
        HierarchyLevel.HL3: n4 * s.h4 + uplink * s.h3,
        HierarchyLevel.HL12: uplink * s.h3,
    }
    return DimensioningResult(
        arch=ArchitectureKind.GROOMING,
        per_level=per_level,
        total=sum(per_level.values()),
        mode=Mode.EXACT,
        electronic_hops_per_demand=1,
        oeo_terminations_per_demand=2,
    )


def dimension_grooming_approx(s: NetworkScenario) -> DimensioningResult:
    """Closed form (1 + 2*eta) * (A4/C) * H4; totals only, no ceilings."""
    validate(s)
    total = (1 + 2 * s.eta) * (s.a4_gbps / s.channel_rate_gbps) * s.h4
    return DimensioningResult(
        arch=ArchitectureKind.GROOMING,
        per_level={},
        total=total,
        mode=Mode.APPROXIMATE,
        electronic_hops_per_demand=1,
        oeo_terminations_per_demand=2,
    )


def dimension_continuum_exact(s: NetworkScenario) -> DimensioningResult:
    """Direct HL4->HL12 lightpaths; HL3 bypassed, zero electronic hops."""
    validate(s)
    n4 = channels_needed(s.a4_gbps, s.channel_rate_gbps)
    per_level = {
        HierarchyLevel.HL4: n4 * s.h4,
        HierarchyLevel.HL3: 0,
        HierarchyLevel.HL12: n4 * s.h4,
    }
    return DimensioningResult(
        arch=ArchitectureKind.CONTINUUM,
        per_level=per_level,
        total=sum(per_level.values()),
        mode=Mode.EXACT,
        electronic_hops_per_demand=0,
        oeo_terminations_per_demand=0,
    )


def dimension_continuum_approx(s: NetworkScenario) -> DimensioningResult:
    """Closed form 2 * (A4/C) * H4."""
    validate(s)
    total = 2 * (s.a4_gbps / s.channel_rate_gbps) * s.h4
    return DimensioningResult(
        arch=ArchitectureKind.CONTINUUM,
        per_level={},
        total=total,
        mode=Mode.APPROXIMATE,
        electronic_hops_per_demand=0,
        oeo_terminations_per_demand=0,
    )


def dimension_ptmp_exact(
    s: NetworkScenario,
    count_mode: PtmpCountMode = PtmpCountMode.WORKED_EXAMPLE,
    topology: PhysicalTopology | None = None,
) -> DimensioningResult:
    """Point-to-multipoint pluggable counts, HL3 bypassed.

    ``worked-example`` needs the physical topology: hub modules pool the
    aggregate traffic of the HL4 nodes attached to each HL12.
    """
    validate(s)
    m = s.fanout_m
    if count_mode is PtmpCountMode.FORMULA:
        slices = math.ceil(Fraction(s.a4_gbps) * m / Fraction(s.channel_rate_gbps)) if s.a4_gbps > 0 else 0
        hl4 = slices * s.h4
        hl12 = math.ceil(Fraction(hl4, m)) if hl4 else 0
    else:
        if topology is None:
            raise DimensioningError("worked-example ptmp counting requires a physical topology")
        n_hl4 = len(topology.nodes_at(HierarchyLevel.HL4))
        if n_hl4 != s.h4:
            raise DimensioningError(
                f"topology has {n_hl4} HL4 nodes but scenario declares h4={s.h4}"
            )
        hl4 = channels_needed(s.a4_gbps, s.channel_rate_gbps) * s.h4
        hl12 = sum(
            channels_needed(spokes * s.a4_gbps, s.channel_rate_gbps)
            for spokes in topology.spokes_per_hub().values()
        )
    per_level = {HierarchyLevel.HL4: hl4, HierarchyLevel.HL3: 0, HierarchyLevel.HL12: hl12}
    return DimensioningResult(
        arch=ArchitectureKind.PTMP,
        per_level=per_level,
        total=sum(per_level.values()),
        mode=Mode.EXACT,
        electronic_hops_per_demand=0,
        oeo_terminations_per_demand=0,
        ptmp_count_mode=count_mode,
    )


def dimension_ptmp_approx(s: NetworkScenario) -> DimensioningResult:
    """Closed form (A4/(C/m)) * H4 * (1 + 1/m)."""
    validate(s)
    m = s.fanout_m
    total = (s.a4_gbps / (s.channel_rate_gbps / m)) * s.h4 * (1 + 1 / m)
    return DimensioningResult(
        arch=ArchitectureKind.PTMP,
        per_level={},
        total=total,
        mode=Mode.APPROXIMATE,
        electronic_hops_per_demand=0,
        oeo_terminations_per_demand=0,
    )


def dimension(
    s: NetworkScenario,
    kind: ArchitectureKind,
    mode: Mode = Mode.EXACT,
    *,
    ptmp_count_mode: PtmpCountMode = PtmpCountMode.WORKED_EXAMPLE,
    topology: PhysicalTopology | None = None,
) -> DimensioningResult:
    """Dispatch to the architecture/mode-specific dimensioner."""
    if kind is ArchitectureKind.GROOMING:
        return dimension_grooming_exact(s) if mode is Mode.EXACT else dimension_grooming_approx(s)
    if kind is ArchitectureKind.CONTINUUM:
        return dimension_continuum_exact(s) if mode is Mode.EXACT else dimension_continuum_approx(s)
    if mode is Mode.EXACT:
        return dimension_ptmp_exact(s, count_mode=ptmp_count_mode, topology=topology)
    return dimension_ptmp_approx(s)
