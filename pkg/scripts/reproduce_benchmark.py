#!/usr/bin/env python3
"""Reproduce the benchmark comparison table on the bundled large-MAN scenario.

Usage: python scripts/reproduce_benchmark.py [scenario.json]
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from mbplan.cli import render_comparison  # noqa: E402
from mbplan.report import build_comparison  # noqa: E402
from mbplan.scenario import load_scenario  # noqa: E402


def main() -> int:
    path = sys.argv[1] if len(sys.argv) > 1 else ROOT / "data" / "large_man.json"
    scenario = load_scenario(path)
    print(render_comparison(build_comparison(scenario)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
