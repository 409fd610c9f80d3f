#!/usr/bin/env python3
"""Contrast C-band-only against the full multi-band plan for one scenario.

Shows why HL3 bypass is only viable with multi-band line systems once a link
concentrates many lightpaths: the bundled ring fixture pushes 100 channels
over a single link, 20 more than the C band holds.

Usage: python scripts/spectrum_headroom.py [scenario.json]
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from mbplan.dimensioning import ArchitectureKind  # noqa: E402
from mbplan.scenario import generate_topology, load_scenario  # noqa: E402
from mbplan.spectrum import (  # noqa: E402
    default_spectrum_plan,
    feasibility_report,
    restrict_plan,
    total_channels,
)


def main() -> int:
    path = sys.argv[1] if len(sys.argv) > 1 else ROOT / "data" / "ring_overload.json"
    scenario = load_scenario(path)
    topology = generate_topology(scenario)
    full = default_spectrum_plan()
    plans = [("C-band only", restrict_plan(full, ["C"])), ("full multi-band", full)]

    print(f"scenario: {path}")
    print(f"{'plan':<16} {'channels':>8} {'feasible':>8} {'peak':>6} {'blocked':>8}")
    for label, plan in plans:
        feas = feasibility_report(plan, topology, ArchitectureKind.CONTINUUM, scenario)
        print(f"{label:<16} {total_channels(plan):>8} {str(feas.feasible):>8} "
              f"{feas.peak_link_occupancy:>6} {feas.blocked_count:>8}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
