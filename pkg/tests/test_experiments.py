import csv
import json

import pytest

from equipart import run_scenario
from equipart.experiments import CSV_COLUMNS, SCENARIOS, uniform_pair_corpus


def test_unknown_scenario():
    with pytest.raises(KeyError):
        run_scenario("does-not-exist")


def test_scenario_names_cover_theorems():
    assert {"scoop-random", "phi-exhaustive", "ers1", "ers1-com", "ers2",
            "maint", "maint3", "maintx", "rams"} <= set(SCENARIOS)


def test_maint_scenario_report(tmp_path):
    report = run_scenario("maint", {"epsilon": "0.25"})
    assert report.passed
    report.write(tmp_path)
    data = json.loads((tmp_path / "maint.json").read_text())
    assert data["passed"] is True
    assert data["expectations"]["complete"] is True
    with (tmp_path / "maint.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert rows
    assert list(rows[0]) == CSV_COLUMNS


def test_scoop_random_small_batch():
    report = run_scenario("scoop-random", {"trials": 25})
    assert report.passed
    assert len(report.rows) == 25


def test_counting_oracle_scenario():
    assert run_scenario("counting-oracle", {"trials": 20}).passed


def test_phi_exhaustive_small():
    assert run_scenario("phi-exhaustive", {"n_max": 5}).passed


def test_uniform_pair_corpus_all_exact_pass():
    from fractions import Fraction

    from equipart import UniformityParams, check_pair

    pairs = uniform_pair_corpus(12, Fraction(1, 4), seed=3)
    assert len(pairs) == 12
    for g, a, b in pairs:
        v = check_pair(g, a, b, UniformityParams(Fraction(1, 4), exact_budget=len(a) + len(b)))
        assert v.kind == "exact_pass"


def test_report_self_contained_revalidation(tmp_path):
    report = run_scenario("maintx", {})
    report.write(tmp_path)
    data = json.loads((tmp_path / "maintx.json").read_text())
    # every recorded expectation flag reproduces from a fresh run of the
    # same configuration
    fresh = run_scenario("maintx", data["config"])
    assert fresh.expectations == data["expectations"]
