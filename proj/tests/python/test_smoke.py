import csv
import io
import math

import pytest

import mrpsim


def test_netting_examples():
    assert mrpsim.net_standard(500, 400, 0, 160) == 60
    assert mrpsim.net_standard(100, 400, 0, 160) == 460
    assert mrpsim.net_extended(500, 400, 0, 160, 3, 5) == 0
    assert mrpsim.net_extended(100, 400, 0, 160, 3, 5) == 300


def test_lot_sizing():
    (lot,) = mrpsim.lot_size([120, 0, 250], "FOP:3", 10)
    assert lot["quantity"] == 370
    assert lot["due"] == 10
    assert mrpsim.lot_size([411], "FOQ:200")[0]["quantity"] == 600


def test_utilization_table():
    rows = {(m, s): u for m, s, u in mrpsim.utilization_table()}
    assert math.isclose(rows[(101, "low")], 0.90, abs_tol=1e-9)
    assert math.isclose(rows[(112, "high")], 0.98, abs_tol=1e-9)
    assert round(rows[(201, "foq800")] * 100, 1) == 88.6


def test_cell_counts():
    assert mrpsim.cell_count("full") == 4032000


def test_simulate_is_deterministic():
    a = mrpsim.simulate(alpha=0.06, sst=0.4, plt=3, run_length=120, warmup=20, seed=5)
    b = mrpsim.simulate(alpha=0.06, sst=0.4, plt=3, run_length=120, warmup=20, seed=5)
    assert a == b
    assert a["overall_cost"] > 0
    assert 0 <= a["service_level"] <= 1
    assert set(a["utilization"]) == {101, 102, 111, 112, 201, 202}


def test_invalid_parameters_raise():
    with pytest.raises(mrpsim.ConfigError, match="allowed set"):
        mrpsim.simulate(sst=0.3)
    with pytest.raises(ValueError):
        mrpsim.simulate(policy="LFL")


def test_preset_analyze_and_tables():
    text = mrpsim.run_preset("null", seed=2, replications=2, run_length=60)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 8 * 6 * 2 * 2 * 2
    assert mrpsim.analyze(text) == []  # standard mode only
    t = mrpsim.tables(text)
    assert "optimal_standard" in t
    assert t["optimal_standard"].count("\n") == 2
