import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mbplan.dimensioning import ArchitectureKind
from mbplan.scenario import (
    HierarchyLevel,
    Link,
    NetworkScenario,
    Node,
    PhysicalTopology,
    generate_topology,
)
from mbplan.spectrum import (
    Band,
    Demand,
    PlanMode,
    RoutingError,
    SpectrumError,
    SpectrumPlan,
    assign_spectrum,
    band_width_thz,
    channel_count,
    default_bands,
    demands_for,
    feasibility_report,
    load_spectrum_plan,
    restrict_plan,
    spectrum_plan_from_json,
    spectrum_plan_to_json,
    thz_to_wavelength,
    total_channels,
    wavelength_to_thz,
    width_thz,
)
from strategies import assignment_cases

HL4, HL3, HL12 = HierarchyLevel.HL4, HierarchyLevel.HL3, HierarchyLevel.HL12


# --- band arithmetic ---------------------------------------------------------

def test_full_span_width():
    assert abs(width_thz(1260.0, 1625.0) - 53.44) < 0.05


def test_c_band_width():
    c = next(b for b in default_bands() if b.name == "C")
    assert abs(band_width_thz(c) - 4.382) < 0.005


def test_degenerate_band_has_zero_width():
    assert width_thz(1550.0, 1550.0) == 0.0
    band = Band("C", 1550.0, 1550.0, channel_count_declared=0)
    assert band_width_thz(band) == 0.0


def test_span_is_more_than_twelvefold_c_band():
    c = next(b for b in default_bands() if b.name == "C")
    assert width_thz(1260.0, 1625.0) / band_width_thz(c) > 12


def test_band_widths_tile_the_span(default_plan):
    total = sum(band_width_thz(b) for b in default_plan.bands)
    assert abs(total - default_plan.span_width_thz()) < 0.01


@settings(max_examples=200)
@given(st.floats(min_value=1000.0, max_value=2000.0))
def test_wavelength_frequency_round_trip(lam):
    back = thz_to_wavelength(wavelength_to_thz(lam))
    assert abs(back - lam) / lam < 1e-6


# --- channel counting --------------------------------------------------------

def test_declared_counts_match_baseline(default_plan):
    assert channel_count(default_plan, "C") == 80
    assert total_channels(default_plan) == 900


def test_computed_c_band_at_50ghz():
    plan = SpectrumPlan(bands=default_bands(), grid_spacing_ghz=50.0, mode=PlanMode.COMPUTED)
    assert channel_count(plan, "C") == 87


def test_computed_zero_width_band():
    plan = SpectrumPlan(
        bands=(Band("C", 1550.0, 1550.0),), grid_spacing_ghz=50.0, mode=PlanMode.COMPUTED
    )
    assert channel_count(plan, "C") == 0
    assert total_channels(plan) == 0


def test_declared_mode_requires_counts():
    with pytest.raises(SpectrumError, match="declared"):
        SpectrumPlan(bands=(Band("C", 1530.0, 1565.0),), mode=PlanMode.DECLARED)


def test_declared_defaults_fit_a_50ghz_grid(default_plan):
    computed = SpectrumPlan(bands=default_bands(), grid_spacing_ghz=50.0, mode=PlanMode.COMPUTED)
    for band in default_plan.bands:
        assert channel_count(default_plan, band) <= channel_count(computed, band.name)


def test_overlapping_bands_rejected():
    with pytest.raises(SpectrumError, match="overlap"):
        SpectrumPlan(
            bands=(
                Band("C", 1530.0, 1570.0, channel_count_declared=1),
                Band("L", 1565.0, 1625.0, channel_count_declared=1),
            )
        )


def test_unknown_band_name_rejected():
    with pytest.raises(SpectrumError, match="unknown band name"):
        Band("X", 1530.0, 1565.0)


def test_restrict_plan(default_plan, c_only_plan):
    assert [b.name for b in c_only_plan.bands] == ["C"]
    with pytest.raises(SpectrumError, match="unknown band"):
        restrict_plan(default_plan, ["Q"])


def test_default_plan_file_matches_builtin(data_dir, default_plan):
    assert load_spectrum_plan(data_dir / "default_spectrum_plan.json") == default_plan


def test_plan_json_round_trip(default_plan):
    assert spectrum_plan_from_json(spectrum_plan_to_json(default_plan)) == default_plan


def test_plan_json_rejects_unknown_fields():
    with pytest.raises(SpectrumError, match="unknown field"):
        spectrum_plan_from_json('{"bands": [], "grid": 50}')


def test_plan_json_rejects_bad_values():
    with pytest.raises(SpectrumError, match="band #0"):
        spectrum_plan_from_json(
            '{"bands": [{"name": "C", "lambda_min_nm": "wide", "lambda_max_nm": 1565}]}'
        )
    with pytest.raises(SpectrumError, match="channel_count_declared"):
        spectrum_plan_from_json(
            '{"bands": [{"name": "C", "lambda_min_nm": 1530, "lambda_max_nm": 1565,'
            ' "channel_count_declared": "eighty"}]}'
        )


# --- demand derivation -------------------------------------------------------

def test_continuum_demands_on_benchmark(benchmark_scenario, benchmark_topology):
    demands = demands_for(ArchitectureKind.CONTINUUM, benchmark_scenario, benchmark_topology)
    assert len(demands) == 200
    assert all(d.channels == 1 for d in demands)
    hubs = benchmark_topology.hl12_hub_map()
    parents = benchmark_topology.hl3_parent_map()
    assert all(d.dest == hubs[parents[d.source]] for d in demands)


def test_grooming_demands_on_benchmark(benchmark_scenario, benchmark_topology):
    demands = demands_for(ArchitectureKind.GROOMING, benchmark_scenario, benchmark_topology)
    access = [d for d in demands if d.source.startswith("hl4")]
    uplinks = [d for d in demands if d.source.startswith("hl3")]
    assert len(access) == 200 and all(d.channels == 1 for d in access)
    assert len(uplinks) == 40 and all(d.channels == 2 for d in uplinks)


def test_zero_traffic_means_no_demands(benchmark_topology, benchmark_scenario):
    s = NetworkScenario(200, 40, 5, 0.0, 0.5)
    for arch in ArchitectureKind:
        assert demands_for(arch, s, benchmark_topology) == []


# --- assignment --------------------------------------------------------------

def two_node_link():
    nodes = (Node("hl12-0", HL12), Node("hl4-0", HL4))
    links = (Link("hl4-0", "hl12-0", 50.0),)
    return PhysicalTopology(nodes=nodes, links=links)


def test_first_fit_on_empty_network(default_plan):
    topo = two_node_link()
    result = assign_spectrum(default_plan, topo, [Demand("hl4-0", "hl12-0", 400.0, 1)])
    assert len(result.lightpaths) == 1
    lp = result.lightpaths[0]
    assert (lp.band, lp.channel) == ("C", 0)
    assert result.blocked == []


def test_benchmark_tree_peak_is_five(benchmark_scenario, benchmark_topology, c_only_plan):
    demands = demands_for(ArchitectureKind.CONTINUUM, benchmark_scenario, benchmark_topology)
    result = assign_spectrum(c_only_plan, benchmark_topology, demands)
    assert result.blocked == []
    assert result.peak == 5
    # the peak sits on HL3-HL12 links, carrying the 5 spokes of each HL3
    for key, used in result.per_link_peak.items():
        if used == 5:
            assert {key[0].split("-")[0], key[1].split("-")[0]} == {"hl12", "hl3"}


def test_ring_overload_blocking(ring_overload_scenario, default_plan, c_only_plan):
    topo = generate_topology(ring_overload_scenario)
    demands = demands_for(ArchitectureKind.CONTINUUM, ring_overload_scenario, topo)
    assert len(demands) == 100
    c_only = assign_spectrum(c_only_plan, topo, demands)
    assert len(c_only.blocked) == 20
    assert c_only.peak == 80
    full = assign_spectrum(default_plan, topo, demands)
    assert full.blocked == []
    assert full.peak == 100


def test_reach_limit_skips_short_bands():
    # 2 x 60 km route: O (100 km) is out of reach, E (150 km) is the first fit
    nodes = (Node("hl12-0", HL12), Node("hl3-0", HL3), Node("hl4-0", HL4))
    links = (Link("hl4-0", "hl3-0", 60.0), Link("hl3-0", "hl12-0", 60.0))
    topo = PhysicalTopology(nodes=nodes, links=links)
    plan = SpectrumPlan(
        bands=(
            Band("O", 1260.0, 1360.0, reach_limit_km=100.0, channel_count_declared=4),
            Band("E", 1360.0, 1460.0, reach_limit_km=150.0, channel_count_declared=4),
        )
    )
    result = assign_spectrum(plan, topo, [Demand("hl4-0", "hl12-0", 100.0, 1)])
    assert result.lightpaths[0].band == "E"
    assert result.lightpaths[0].length_km == 120.0


def test_route_ties_break_lexicographically(default_plan):
    nodes = (
        Node("hl12-0", HL12), Node("hl3-0", HL3), Node("hl3-1", HL3), Node("hl4-0", HL4),
    )
    links = (
        Link("hl4-0", "hl3-0", 50.0), Link("hl4-0", "hl3-1", 50.0),
        Link("hl3-0", "hl12-0", 50.0), Link("hl3-1", "hl12-0", 50.0),
    )
    topo = PhysicalTopology(nodes=nodes, links=links)
    result = assign_spectrum(default_plan, topo, [Demand("hl4-0", "hl12-0", 100.0, 1)])
    assert result.lightpaths[0].route == (("hl4-0", "hl3-0"), ("hl3-0", "hl12-0"))


def test_km_weighted_routing_prefers_short_detour(default_plan):
    # direct link is 1 hop but 100 km; the detour is 2 hops but 20 km
    nodes = (Node("hl12-0", HL12), Node("hl3-0", HL3), Node("hl4-0", HL4))
    links = (
        Link("hl4-0", "hl12-0", 100.0),
        Link("hl4-0", "hl3-0", 10.0),
        Link("hl3-0", "hl12-0", 10.0),
    )
    topo = PhysicalTopology(nodes=nodes, links=links)
    demand = [Demand("hl4-0", "hl12-0", 100.0, 1)]
    by_hops = assign_spectrum(default_plan, topo, demand)
    assert by_hops.lightpaths[0].route == (("hl4-0", "hl12-0"),)
    by_km = assign_spectrum(default_plan, topo, demand, route_by_km=True)
    assert by_km.lightpaths[0].route == (("hl4-0", "hl3-0"), ("hl3-0", "hl12-0"))
    assert by_km.lightpaths[0].length_km == 20.0


def test_unreachable_destination_is_structural_error(default_plan):
    nodes = (Node("hl12-0", HL12), Node("hl4-0", HL4), Node("hl4-1", HL4))
    links = (Link("hl4-0", "hl12-0", 50.0),)
    topo = PhysicalTopology(nodes=nodes, links=links)
    with pytest.raises(RoutingError, match="no route"):
        assign_spectrum(default_plan, topo, [Demand("hl4-1", "hl12-0", 100.0, 1)])
    with pytest.raises(RoutingError, match="source equals destination"):
        assign_spectrum(default_plan, topo, [Demand("hl4-0", "hl4-0", 100.0, 1)])


def test_partial_blocking_conserves_channels():
    topo = two_node_link()
    plan = SpectrumPlan(bands=(Band("C", 1530.0, 1565.0, channel_count_declared=3),))
    demands = [Demand("hl4-0", "hl12-0", 400.0, 2), Demand("hl12-0", "hl4-0", 400.0, 2)]
    result = assign_spectrum(plan, topo, demands)
    assert len(result.lightpaths) == 3
    assert len(result.blocked) == 1
    assert result.blocked[0] == demands[1]


# --- randomized invariants ---------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(assignment_cases())
def test_assignment_invariants(case):
    plan, topo, demands = case
    result = assign_spectrum(plan, topo, demands)
    # conservation
    assert len(result.lightpaths) + len(result.blocked) == sum(d.channels for d in demands)
    # no collision on any link, and peak bookkeeping matches
    seen = {}
    for lp in result.lightpaths:
        for a, b in lp.route:
            key = (a, b) if a <= b else (b, a)
            assert (lp.band, lp.channel) not in seen.setdefault(key, set())
            seen[key].add((lp.band, lp.channel))
    for key, used in seen.items():
        assert result.per_link_peak[key] == len(used)
    reaches = {b.name: b.reach_limit_km for b in plan.bands}
    counts = {b.name: channel_count(plan, b) for b in plan.bands}
    lengths = topo.link_lengths()
    for lp in result.lightpaths:
        # continuity: route is a connected simple path from source to dest
        assert lp.route[0][0] == lp.source and lp.route[-1][1] == lp.dest
        for (_, u), (v, _) in zip(lp.route, lp.route[1:]):
            assert u == v
        node_seq = [lp.route[0][0]] + [b for _, b in lp.route]
        assert len(set(node_seq)) == len(node_seq)
        # reach respected, channel index within the band
        assert reaches[lp.band] is None or reaches[lp.band] >= lp.length_km
        assert 0 <= lp.channel < counts[lp.band]
        assert lp.length_km == sum(
            lengths[(a, b) if a <= b else (b, a)] for a, b in lp.route
        )


@settings(max_examples=60, deadline=None)
@given(assignment_cases())
def test_assignment_deterministic(case):
    plan, topo, demands = case
    first = assign_spectrum(plan, topo, demands)
    second = assign_spectrum(plan, topo, demands)
    assert first.lightpaths == second.lightpaths
    assert first.blocked == second.blocked
    assert first.per_link_peak == second.per_link_peak


# --- feasibility reports -----------------------------------------------------

def test_feasibility_benchmark_c_only(benchmark_scenario, benchmark_topology, c_only_plan):
    feas = feasibility_report(c_only_plan, benchmark_topology, ArchitectureKind.CONTINUUM, benchmark_scenario)
    assert feas.feasible
    assert feas.peak_link_occupancy == 5
    assert feas.blocked_count == 0
    assert feas.band_utilization["C"] == pytest.approx(5 / 80)


def test_feasibility_empty_demands(benchmark_topology, default_plan):
    s = NetworkScenario(200, 40, 5, 0.0, 0.5)
    feas = feasibility_report(default_plan, benchmark_topology, ArchitectureKind.CONTINUUM, s)
    assert feas.feasible
    assert feas.blocked_count == 0
    assert feas.peak_link_occupancy == 0
    assert all(v == 0.0 for v in feas.band_utilization.values())


def test_feasibility_ring_overload(ring_overload_scenario, default_plan, c_only_plan):
    topo = generate_topology(ring_overload_scenario)
    c_only = feasibility_report(c_only_plan, topo, ArchitectureKind.CONTINUUM, ring_overload_scenario)
    assert not c_only.feasible
    assert c_only.blocked_count == 20
    assert c_only.band_utilization["C"] == 1.0
    full = feasibility_report(default_plan, topo, ArchitectureKind.CONTINUUM, ring_overload_scenario)
    assert full.feasible
    assert full.blocked_count == 0
