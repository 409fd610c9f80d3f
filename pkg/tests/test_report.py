import json

from mbplan.costing import CostModel
from mbplan.dimensioning import ArchitectureKind, PtmpCountMode
from mbplan.report import DISCREPANCY_FOOTNOTES, build_comparison
from mbplan.spectrum import Band, SpectrumPlan


def test_report_covers_all_architectures(benchmark_scenario):
    report = build_comparison(benchmark_scenario)
    assert set(report.results) == set(ArchitectureKind)
    assert set(report.spectrum) == {ArchitectureKind.CONTINUUM, ArchitectureKind.PTMP}
    assert report.footnotes == DISCREPANCY_FOOTNOTES
    assert report.results[ArchitectureKind.PTMP].ptmp_count_mode is PtmpCountMode.WORKED_EXAMPLE


def test_report_dict_is_json_native(benchmark_scenario):
    doc = build_comparison(benchmark_scenario).to_dict()
    assert json.loads(json.dumps(doc)) == doc
    assert doc["results"]["continuum"]["total"] == 400
    assert doc["costs"]["costs"]["grooming"]["total_cu"] == 9280.0


def test_plan_without_c_band_skips_the_c_only_column(benchmark_scenario):
    l_only = SpectrumPlan(bands=(Band("L", 1565.0, 1625.0, channel_count_declared=118),))
    report = build_comparison(benchmark_scenario, plan=l_only, cost_model=CostModel())
    summary = report.spectrum[ArchitectureKind.CONTINUUM]
    assert summary.c_band_only is None
    assert summary.full_plan.feasible
    assert report.to_dict()["spectrum"]["continuum"]["c_band_only"] is None


def test_footnotes_flag_the_known_discrepancies():
    joined = " ".join(DISCREPANCY_FOOTNOTES)
    for marker in ("7728", "9280", "(1 + 2*eta)", "worked-example", "100 GHz"):
        assert marker in joined
