"""Multi-band frequency plan and first-fit routing/spectrum assignment.

The fibre spectrum spans 1260-1625 nm split into the usual five transmission
bands (O, E, S, C, L), about 53.4 THz in total, more than twelve times the
C band alone. Each band carries a channel grid and an optional transparent
reach limit: the short-wavelength bands see higher attenuation and are only
attractive over short distances, so they default to finite reach while C and
L are unlimited.

Channel counts come in two modes. ``computed`` derives them from the band
width and the grid spacing; ``declared`` uses a per-band override table.
The shipped declared defaults total 900 channels with 80 in C; the split of
the remaining 820 across O/E/S/L is proportional to the band widths
(largest-remainder rounding) - a derived table, not a measured one.

``assign_spectrum`` routes each demand on the hop-count shortest path
(lexicographic tie-break) and first-fits a (band, channel) that is free on
every link of the route - wavelength continuity, no conversion - scanning
bands in plan order and skipping bands whose reach is shorter than the
route. Channels that fit nowhere are reported as blocked, not raised.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .dimensioning import ArchitectureKind, channels_needed, grooming_uplink_channels
from .scenario import HierarchyLevel, NetworkScenario, PhysicalTopology, validate

#: speed of light in nm*THz (c = 299792458 m/s)
SPEED_OF_LIGHT_NM_THZ = 299792.458

BAND_NAMES = ("O", "E", "S", "C", "L")

DEFAULT_GRID_SPACING_GHZ = 50.0


class SpectrumError(ValueError):
    """Raised for invalid band/plan definitions or plan files."""


class RoutingError(ValueError):
    """Raised when a demand is structurally unroutable (not mere blocking)."""


def wavelength_to_thz(lambda_nm: float) -> float:
    return SPEED_OF_LIGHT_NM_THZ / lambda_nm


def thz_to_wavelength(freq_thz: float) -> float:
    return SPEED_OF_LIGHT_NM_THZ / freq_thz


def width_thz(lambda_min_nm: float, lambda_max_nm: float) -> float:
    """Frequency width of a wavelength range; 0 for a degenerate range."""
    return SPEED_OF_LIGHT_NM_THZ * (1.0 / lambda_min_nm - 1.0 / lambda_max_nm)


@dataclass(frozen=True)
class Band:
    """One transmission band: wavelength edges, reach limit, optional count.

    ``reach_limit_km=None`` means unlimited transparent reach.
    """

    name: str
    lambda_min_nm: float
    lambda_max_nm: float
    reach_limit_km: float | None = None
    channel_count_declared: int | None = None

    def __post_init__(self):
        if self.name not in BAND_NAMES:
            raise SpectrumError(f"unknown band name {self.name!r} (expected one of {BAND_NAMES})")
        if not 0 < self.lambda_min_nm <= self.lambda_max_nm:
            raise SpectrumError(
                f"band {self.name}: need 0 < lambda_min <= lambda_max, "
                f"got {self.lambda_min_nm}..{self.lambda_max_nm}"
            )
        if self.reach_limit_km is not None and not self.reach_limit_km > 0:
            raise SpectrumError(f"band {self.name}: reach_limit_km must be positive or null")
        declared = self.channel_count_declared
        if declared is not None and (
            isinstance(declared, bool) or not isinstance(declared, int) or declared < 0
        ):
            raise SpectrumError(
                f"band {self.name}: channel_count_declared must be an integer >= 0, got {declared!r}"
            )


def band_width_thz(band: Band) -> float:
    return width_thz(band.lambda_min_nm, band.lambda_max_nm)


def band_width_ghz(band: Band) -> float:
    return band_width_thz(band) * 1000.0


class PlanMode(str, Enum):
    COMPUTED = "computed"
    DECLARED = "declared"


@dataclass(frozen=True)
class SpectrumPlan:
    """Ordered bands (assignment preference order) plus the grid rule."""

    bands: tuple[Band, ...]
    grid_spacing_ghz: float = DEFAULT_GRID_SPACING_GHZ
    mode: PlanMode = PlanMode.DECLARED

    def __post_init__(self):
        object.__setattr__(self, "bands", tuple(self.bands))
        if not self.bands:
            raise SpectrumError("spectrum plan needs at least one band")
        names = [b.name for b in self.bands]
        if len(set(names)) != len(names):
            raise SpectrumError(f"duplicate band names in plan: {names}")
        if not self.grid_spacing_ghz > 0:
            raise SpectrumError(f"grid_spacing_ghz must be positive, got {self.grid_spacing_ghz}")
        by_edge = sorted(self.bands, key=lambda b: b.lambda_min_nm)
        for lo, hi in zip(by_edge, by_edge[1:]):
            if hi.lambda_min_nm < lo.lambda_max_nm:
                raise SpectrumError(f"bands {lo.name} and {hi.name} overlap")
        if self.mode is PlanMode.DECLARED:
            missing = [b.name for b in self.bands if b.channel_count_declared is None]
            if missing:
                raise SpectrumError(
                    f"declared mode needs channel_count_declared for band(s): {', '.join(missing)}"
                )

    def band(self, name: str) -> Band:
        for band in self.bands:
            if band.name == name:
                return band
        raise SpectrumError(f"no band named {name!r} in plan")

    def span_width_thz(self) -> float:
        lo = min(b.lambda_min_nm for b in self.bands)
        hi = max(b.lambda_max_nm for b in self.bands)
        return width_thz(lo, hi)


def channel_count(plan: SpectrumPlan, band: Band | str) -> int:
    """Channels available in one band under the plan's counting mode."""
    if isinstance(band, str):
        band = plan.band(band)
    if plan.mode is PlanMode.DECLARED:
        if band.channel_count_declared is None:
            raise SpectrumError(f"band {band.name}: declared mode but no declared channel count")
        return band.channel_count_declared
    return int(math.floor(band_width_ghz(band) / plan.grid_spacing_ghz + 1e-9))


def total_channels(plan: SpectrumPlan) -> int:
    return sum(channel_count(plan, band) for band in plan.bands)


def default_bands() -> tuple[Band, ...]:
    """Shipped defaults, in assignment preference order (longest reach first).

    Declared counts: C=80 and 900 total are the reference baseline; the
    O/E/S/L split of the remaining 820 is derived (width-proportional,
    largest remainder). Reach limits are planning assumptions: C/L unlimited,
    S 500 km, E 150 km, O 100 km.
    """
    return (
        Band("C", 1530.0, 1565.0, reach_limit_km=None, channel_count_declared=80),
        Band("L", 1565.0, 1625.0, reach_limit_km=None, channel_count_declared=118),
        Band("S", 1460.0, 1530.0, reach_limit_km=500.0, channel_count_declared=157),
        Band("E", 1360.0, 1460.0, reach_limit_km=150.0, channel_count_declared=252),
        Band("O", 1260.0, 1360.0, reach_limit_km=100.0, channel_count_declared=293),
    )


def default_spectrum_plan() -> SpectrumPlan:
    return SpectrumPlan(bands=default_bands())


def restrict_plan(plan: SpectrumPlan, names: Iterable[str]) -> SpectrumPlan:
    """Same plan restricted to a subset of its bands (plan order kept)."""
    wanted = list(names)
    known = {b.name for b in plan.bands}
    unknown = [n for n in wanted if n not in known]
    if unknown:
        raise SpectrumError(f"unknown band name(s): {', '.join(unknown)}")
    bands = tuple(b for b in plan.bands if b.name in set(wanted))
    return SpectrumPlan(bands=bands, grid_spacing_ghz=plan.grid_spacing_ghz, mode=plan.mode)


def spectrum_plan_from_json(text: str) -> SpectrumPlan:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpectrumError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise SpectrumError("spectrum plan document must be a JSON object")
    unknown = sorted(set(raw) - {"bands", "grid_spacing_ghz", "mode"})
    if unknown:
        raise SpectrumError(f"unknown field(s) in spectrum plan: {', '.join(unknown)}")
    if "bands" not in raw or not isinstance(raw["bands"], list):
        raise SpectrumError("spectrum plan needs a 'bands' list")
    band_keys = {"name", "lambda_min_nm", "lambda_max_nm", "reach_limit_km", "channel_count_declared"}
    bands = []
    for i, entry in enumerate(raw["bands"]):
        if not isinstance(entry, dict):
            raise SpectrumError(f"band #{i} must be an object")
        bad = sorted(set(entry) - band_keys)
        if bad:
            raise SpectrumError(f"band #{i}: unknown field(s): {', '.join(bad)}")
        try:
            bands.append(
                Band(
                    name=entry["name"],
                    lambda_min_nm=float(entry["lambda_min_nm"]),
                    lambda_max_nm=float(entry["lambda_max_nm"]),
                    reach_limit_km=None if entry.get("reach_limit_km") is None else float(entry["reach_limit_km"]),
                    channel_count_declared=entry.get("channel_count_declared"),
                )
            )
        except KeyError as exc:
            raise SpectrumError(f"band #{i}: missing field {exc.args[0]!r}") from exc
        except (TypeError, ValueError) as exc:
            if isinstance(exc, SpectrumError):
                raise
            raise SpectrumError(f"band #{i}: {exc}") from exc
    try:
        mode = PlanMode(raw.get("mode", PlanMode.DECLARED.value))
    except ValueError:
        raise SpectrumError(f"mode must be computed|declared, got {raw.get('mode')!r}") from None
    return SpectrumPlan(
        bands=tuple(bands),
        grid_spacing_ghz=float(raw.get("grid_spacing_ghz", DEFAULT_GRID_SPACING_GHZ)),
        mode=mode,
    )


def spectrum_plan_to_json(plan: SpectrumPlan) -> str:
    doc = {
        "grid_spacing_ghz": plan.grid_spacing_ghz,
        "mode": plan.mode.value,
        "bands": [
            {
                "name": b.name,
                "lambda_min_nm": b.lambda_min_nm,
                "lambda_max_nm": b.lambda_max_nm,
                "reach_limit_km": b.reach_limit_km,
                "channel_count_declared": b.channel_count_declared,
            }
            for b in plan.bands
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_spectrum_plan(path: str | Path) -> SpectrumPlan:
    return spectrum_plan_from_json(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class Demand:
    """One connectivity request: ``channels`` parallel carriers of the rate."""

    source: str
    dest: str
    rate_gbps: float
    channels: int


def demands_for(
    arch: ArchitectureKind, scenario: NetworkScenario, topology: PhysicalTopology
) -> list[Demand]:
    """Lightpath demand set implied by an architecture on a topology.

    Continuum and PtMP: one demand per HL4 toward its HL12 hub with
    ceil(A4/C) channels. Grooming: per-HL4 demands to the HL3 parent plus
    per-HL3 uplink demands of ceil((h4/h3)*eta*a4/C) channels to the hub.
    Zero-channel demands are dropped (a4=0 yields an empty list).
    """
    validate(scenario)
    rate = scenario.channel_rate_gbps
    parents = topology.hl3_parent_map()
    hubs = topology.hl12_hub_map()
    demands: list[Demand] = []
    if arch is ArchitectureKind.GROOMING:
        n4 = channels_needed(scenario.a4_gbps, rate)
        if n4:
            for hl4 in topology.nodes_at(HierarchyLevel.HL4):
                demands.append(Demand(hl4, parents[hl4], scenario.a4_gbps, n4))
        uplink = grooming_uplink_channels(scenario)
        if uplink:
            groomed = (scenario.h4 / scenario.h3) * scenario.eta * scenario.a4_gbps
            for hl3 in topology.nodes_at(HierarchyLevel.HL3):
                demands.append(Demand(hl3, hubs[hl3], groomed, uplink))
    else:
        n4 = channels_needed(scenario.a4_gbps, rate)
        if n4:
            for hl4 in topology.nodes_at(HierarchyLevel.HL4):
                demands.append(Demand(hl4, hubs[parents[hl4]], scenario.a4_gbps, n4))
    return demands


@dataclass(frozen=True)
class Lightpath:
    """An all-optical channel holding one (band, channel) on every route link."""

    source: str
    dest: str
    route: tuple[tuple[str, str], ...]
    band: str
    channel: int
    rate_gbps: float
    length_km: float


@dataclass
class SpectrumAssignment:
    lightpaths: list[Lightpath]
    blocked: list[Demand]
    per_link_peak: dict[tuple[str, str], int]

    @property
    def peak(self) -> int:
        return max(self.per_link_peak.values(), default=0)


def _shortest_path(
    adj: dict[str, tuple[str, ...]],
    lengths: dict[tuple[str, str], float],
    source: str,
    dest: str,
    by_km: bool,
) -> tuple[str, ...]:
    """Min-cost path, cost = hops (or km), ties by lexicographic node sequence."""
    if source not in adj or dest not in adj:
        missing = source if source not in adj else dest
        raise RoutingError(f"unknown node {missing!r}")
    if source == dest:
        raise RoutingError(f"demand source equals destination: {source!r}")
    heap: list[tuple[float, tuple[str, ...]]] = [(0.0, (source,))]
    done: set[str] = set()
    while heap:
        cost, path = heapq.heappop(heap)
        node = path[-1]
        if node in done:
            continue
        done.add(node)
        if node == dest:
            return path
        for nbr in adj[node]:
            if nbr not in done:
                step = lengths[(node, nbr) if node <= nbr else (nbr, node)] if by_km else 1.0
                heapq.heappush(heap, (cost + step, path + (nbr,)))
    raise RoutingError(f"no route from {source!r} to {dest!r}")


def assign_spectrum(
    plan: SpectrumPlan,
    topology: PhysicalTopology,
    demands: Sequence[Demand],
    *,
    route_by_km: bool = False,
) -> SpectrumAssignment:
    """First-fit multi-band RSA over the demand list, in order.

    Each channel of a demand takes the lowest channel index free on every
    link of the route, in the first band (plan order) whose reach covers the
    route length. Unplaceable channels land in ``blocked``, one entry per
    channel, so len(lightpaths) + len(blocked) equals the requested channel
    total. Unknown or unreachable endpoints raise :class:`RoutingError`.
    """
    adj = topology.adjacency()
    lengths = topology.link_lengths()
    counts = {band.name: channel_count(plan, band) for band in plan.bands}
    occupied: dict[tuple[str, str], set[tuple[str, int]]] = {link.key: set() for link in topology.links}

    lightpaths: list[Lightpath] = []
    blocked: list[Demand] = []
    for demand in demands:
        path = _shortest_path(adj, lengths, demand.source, demand.dest, route_by_km)
        hops = tuple(zip(path, path[1:]))
        keys = [(a, b) if a <= b else (b, a) for a, b in hops]
        route_km = sum(lengths[k] for k in keys)
        per_carrier = demand.rate_gbps / demand.channels if demand.channels else 0.0
        for _ in range(demand.channels):
            slot = _first_fit(plan, counts, occupied, keys, route_km)
            if slot is None:
                blocked.append(demand)
                continue
            band_name, ch = slot
            for k in keys:
                occupied[k].add((band_name, ch))
            lightpaths.append(
                Lightpath(
                    source=demand.source,
                    dest=demand.dest,
                    route=hops,
                    band=band_name,
                    channel=ch,
                    rate_gbps=per_carrier,
                    length_km=route_km,
                )
            )
    per_link_peak = {key: len(used) for key, used in occupied.items()}
    return SpectrumAssignment(lightpaths=lightpaths, blocked=blocked, per_link_peak=per_link_peak)


def _first_fit(plan, counts, occupied, keys, route_km):
    for band in plan.bands:
        if band.reach_limit_km is not None and band.reach_limit_km < route_km:
            continue
        n = counts[band.name]
        used = set().union(*(occupied[k] for k in keys)) if keys else set()
        for ch in range(n):
            if (band.name, ch) not in used:
                return band.name, ch
    return None


@dataclass
class FeasibilityReport:
    """Whether a demand set fits the plan, and how tight the fit is.

    ``band_utilization`` is per band the occupied fraction of its channels
    on the most loaded link (1.0 = saturated somewhere).
    """

    feasible: bool
    peak_link_occupancy: int
    blocked_count: int
    band_utilization: dict[str, float]
    lightpath_count: int
    requested_channels: int

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "peak_link_occupancy": self.peak_link_occupancy,
            "blocked_count": self.blocked_count,
            "band_utilization": dict(self.band_utilization),
            "lightpath_count": self.lightpath_count,
            "requested_channels": self.requested_channels,
        }


def feasibility_report(
    plan: SpectrumPlan,
    topology: PhysicalTopology,
    arch: ArchitectureKind,
    scenario: NetworkScenario,
    *,
    route_by_km: bool = False,
) -> FeasibilityReport:
    """Route and assign the architecture's demands; feasible iff none blocked."""
    demands = demands_for(arch, scenario, topology)
    assignment = assign_spectrum(plan, topology, demands, route_by_km=route_by_km)
    utilization = _band_utilization(assignment, plan)
    return FeasibilityReport(
        feasible=not assignment.blocked,
        peak_link_occupancy=assignment.peak,
        blocked_count=len(assignment.blocked),
        band_utilization=utilization,
        lightpath_count=len(assignment.lightpaths),
        requested_channels=sum(d.channels for d in demands),
    )


def _band_utilization(assignment: SpectrumAssignment, plan: SpectrumPlan) -> dict[str, float]:
    per_link_band: dict[tuple[str, str], dict[str, int]] = {}
    for lp in assignment.lightpaths:
        for a, b in lp.route:
            key = (a, b) if a <= b else (b, a)
            per_link_band.setdefault(key, {}).setdefault(lp.band, 0)
            per_link_band[key][lp.band] += 1
    utilization: dict[str, float] = {}
    for band in plan.bands:
        n = channel_count(plan, band)
        peak = max((bands.get(band.name, 0) for bands in per_link_band.values()), default=0)
        utilization[band.name] = (peak / n) if n else 0.0
    return utilization
