"""Multi-band metro transport planning: dimensioning, spectrum, CAPEX."""

from .costing import ArchitectureCost, CostModel, CostReport, Savings, compare, cost
from .dimensioning import (
    ArchitectureKind,
    DimensioningResult,
    Mode,
    PtmpCountMode,
    dimension,
    dimension_continuum_approx,
    dimension_continuum_exact,
    dimension_grooming_approx,
    dimension_grooming_exact,
    dimension_ptmp_approx,
    dimension_ptmp_exact,
)
from .report import ComparisonReport, build_comparison
from .scenario import (
    HierarchyLevel,
    NetworkScenario,
    PhysicalTopology,
    ScenarioError,
    TopologyKind,
    generate_topology,
    load_scenario,
    save_scenario,
    scenario_from_json,
    scenario_to_json,
    validate,
)
from .spectrum import (
    Band,
    Demand,
    FeasibilityReport,
    Lightpath,
    PlanMode,
    SpectrumPlan,
    assign_spectrum,
    band_width_thz,
    channel_count,
    default_spectrum_plan,
    demands_for,
    feasibility_report,
    load_spectrum_plan,
    total_channels,
    width_thz,
)

__version__ = "0.1.0"
