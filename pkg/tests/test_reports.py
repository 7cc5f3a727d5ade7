import csv
from datetime import date, datetime, time
from pathlib import Path

import pytest
from pytest import approx

from conftest import two_level_trace
from jcci.charging import simulate
from jcci.cli import _parse_month_grid, _resolve_ci, main
from jcci.errors import InputError, ModelError, RegistryError
from jcci.grid import serialize_trace
from jcci.scenarios import (
    MONTH_GRID,
    Scenario,
    Step,
    Table,
    bundled_scenario,
    charge_day_chart,
    list_scenarios,
    run_scenario,
    write_table,
)
from jcci.svg import ChartSpec, Series, emit_chart
from test_registry import MINIMAL

GOLDEN = Path(__file__).parent / "golden"


def test_empty_scenario_produces_empty_bundle(registry):
    bundle = run_scenario(Scenario("nothing", "Nothing", ()), registry)
    assert bundle.scenario == "nothing"
    assert bundle.tables == ()
    assert bundle.charts == ()
    assert bundle.written == ()


def test_step_and_scenario_validation():
    with pytest.raises(InputError, match="must be \\[a-z0-9_\\]"):
        Step("sizing", "Bad Stem")
    with pytest.raises(InputError, match="unknown op 'fly'"):
        Step("fly", "somewhere")
    with pytest.raises(InputError, match="duplicate step output stems"):
        Scenario("dup", "Dup", (Step("sizing", "same"), Step("sizing", "same")))


def test_step_errors_carry_scenario_context(registry):
    missing = Scenario("broken", "Broken", (Step("cci_grid", "out"),))
    with pytest.raises(InputError, match="scenario broken step 1 \\(cci_grid\\)"):
        run_scenario(missing, registry)
    bad_device = Scenario(
        "broken", "Broken",
        (Step("cci_grid", "out", {
            "devices": (("toaster", "reused"),),
            "benchmarks": ("sgemm",),
            "months": (12,),
            "mix": "california",
        }),),
    )
    # the original error class survives the wrapping
    with pytest.raises(RegistryError, match="scenario broken step 1.*toaster"):
        run_scenario(bad_device, registry)


def test_every_bundled_table_carries_provenance(registry):
    for name in list_scenarios():
        bundle = run_scenario(bundled_scenario(name), registry)
        assert bundle.tables, name
        for table in bundle.tables:
            assert "provenance" in table.columns, f"{name}/{table.name}"
            column = table.columns.index("provenance")
            for row in table.rows:
                assert row[column] in ("computed", "published", "published-override")


def test_bundled_scenario_lookup():
    assert list_scenarios() == ("fig3", "fig5", "fig6", "fig7", "fig9", "table1", "table4")
    assert bundled_scenario("table1").steps[0].op == "sizing"
    with pytest.raises(InputError, match="unknown scenario"):
        bundled_scenario("fig99")


def test_charge_day_chart_shading_matches_schedule(pixel, load):
    trace = two_level_trace(days=3)
    result = simulate(pixel, load, trace)
    day = sorted({trace.local_date(ts) for ts in trace.timestamps})[1]
    dataset, spec = charge_day_chart(result, trace, day, "middle day")
    assert len(dataset) == 1
    assert len(dataset[0].xs) == 288

    day_start = int(datetime.combine(day, time.min, tzinfo=trace.zone).timestamp())
    expected = []
    for start, end in result.schedule:
        lo, hi = max(start, day_start), min(end, day_start + 86_400)
        if lo < hi:
            expected.append(((lo - day_start) / 3600.0, (hi - day_start) / 3600.0))
    assert spec.shaded == tuple(expected)
    assert expected, "day with no charging makes a weak test"
    assert all(0.0 <= lo < hi <= 24.0 for lo, hi in spec.shaded)

    with pytest.raises(InputError, match="no samples"):
        charge_day_chart(result, trace, date(1999, 1, 1), "empty")


def test_reports_are_byte_stable(registry, tmp_path):
    first = run_scenario(bundled_scenario("fig5"), registry, out_dir=tmp_path / "a")
    second = run_scenario(bundled_scenario("fig5"), registry, out_dir=tmp_path / "b")
    names_a = sorted(p.name for p in first.written)
    names_b = sorted(p.name for p in second.written)
    assert names_a == names_b and names_a
    for name in names_a:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_chart_bytes_match_golden_files():
    line_dataset = (
        Series("reused", (3.0, 6.0, 9.0, 12.0), (8.4, 5.1, 4.0, 3.55)),
        Series("new", (3.0, 6.0, 9.0, 12.0), (96.2, 49.8, 34.1, 26.3)),
    )
    line_spec = ChartSpec("golden line", "months", "mg per unit", shaded=((4.0, 7.5),))
    assert emit_chart(line_dataset, line_spec) == (GOLDEN / "line_chart.svg").read_bytes()

    bar_dataset = (
        Series("with scheduling", (0.0, 1.0, 2.0), (12.53, 18.8, 9.75)),
        Series("without", (0.0, 1.0, 2.0), (12.0, 18.0, 9.34)),
    )
    bar_spec = ChartSpec("golden bars", "scenario", "rival/cluster", kind="bar",
                         categories=("hotel", "write", "read"))
    assert emit_chart(bar_dataset, bar_spec) == (GOLDEN / "bar_chart.svg").read_bytes()


def test_format_selects_artifact_kinds(registry, tmp_path):
    csv_only = run_scenario(bundled_scenario("table1"), registry,
                            out_dir=tmp_path / "csv", fmt="csv")
    assert csv_only.written and all(p.suffix == ".csv" for p in csv_only.written)
    svg_only = run_scenario(bundled_scenario("fig5"), registry,
                            out_dir=tmp_path / "svg", fmt="svg")
    assert svg_only.written and all(p.suffix == ".svg" for p in svg_only.written)
    with pytest.raises(InputError, match="format 'pdf'"):
        run_scenario(bundled_scenario("fig5"), registry, fmt="pdf")
    # in-memory runs still build everything
    assert svg_only.tables


def test_write_table_cell_formatting(tmp_path):
    table = Table(
        "cells",
        ("a", "b", "c", "d", "e"),
        ((1.0 / 3.0, True, None, date(2021, 4, 1), "text"),),
    )
    path = tmp_path / "cells.csv"
    write_table(table, path)
    text = path.read_bytes().decode("utf-8")
    assert text == "a,b,c,d,e\n0.3333333333,true,,2021-04-01,text\n"
    with pytest.raises(InputError, match="row width"):
        Table("bad", ("a", "b"), ((1,),))


def test_parse_month_grid():
    assert _parse_month_grid("36") == (36,)
    assert _parse_month_grid("12,24,36") == (12, 24, 36)
    assert _parse_month_grid("3:60:3") == MONTH_GRID
    assert _parse_month_grid("3:7:2") == (3, 5, 7)
    for bad in ("", "a", "3:60", "60:3:3", "3:60:0"):
        with pytest.raises(InputError, match="cannot parse month grid"):
            _parse_month_grid(bad)


def test_resolve_ci(tmp_path):
    assert _resolve_ci("california") == 257.0
    assert _resolve_ci("412.5") == 412.5
    trace_path = tmp_path / "trace.csv"
    trace_path.write_text(serialize_trace(two_level_trace(days=1)))
    assert _resolve_ci(str(trace_path)) == approx(
        (12 * 6 * 80.0 + (288 - 72) * 320.0) / 288.0
    )
    with pytest.raises(InputError, match="not a known mix"):
        _resolve_ci("nonsense")


# --- command-line entry point -----------------------------------------


def test_cli_registry_validate(capsys):
    assert main(["registry", "validate"]) == 0
    out = capsys.readouterr().out
    assert out == "ok: 5 devices, 2 peripherals, 1 load profiles\n"


def test_cli_registry_env_override(tmp_path, monkeypatch, capsys):
    custom = tmp_path / "custom.ini"
    custom.write_text(MINIMAL)
    monkeypatch.setenv("JCCI_REGISTRY", str(custom))
    assert main(["registry", "validate"]) == 0
    assert capsys.readouterr().out == "ok: 1 devices, 0 peripherals, 1 load profiles\n"


def test_cli_thermal_fans(capsys):
    assert main(["thermal", "fans", "--watts", "666"]) == 0
    assert capsys.readouterr().out == "fans=2\n"


def test_cli_charge_duty(capsys):
    assert main(["charge", "duty", "--device", "pixel_3a"]) == 0
    out = capsys.readouterr().out
    assert "duty_percent=8.528" in out
    assert "backup_runtime_hours at soc 0.25: 2.036" in out


def test_cli_scenario_list(capsys):
    assert main(["scenario", "list"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 7
    assert lines[0].startswith("fig3: ")


def test_cli_unknown_device_is_an_input_error(tmp_path, capsys):
    code = main(["--out-dir", str(tmp_path), "cci", "single",
                 "--device", "toaster", "--benchmark", "sgemm"])
    assert code == 1
    assert "error: " in capsys.readouterr().err


def test_cli_zero_lifetime_is_a_model_error(tmp_path, capsys):
    code = main(["--out-dir", str(tmp_path), "cci", "single",
                 "--device", "pixel_3a", "--benchmark", "sgemm",
                 "--lifetime-months", "0"])
    assert code == 2
    assert "model error: " in capsys.readouterr().err


def test_cli_usage_errors_exit_one(capsys):
    assert main(["registry", "frobnicate"]) == 1
    assert main(["cost", "--design", "pixel_10_hosting"]) == 1  # missing prices
    capsys.readouterr()


def test_cli_cost(tmp_path, capsys):
    code = main(["--out-dir", str(tmp_path), "cost",
                 "--design", "pixel_10_hosting", "--months", "36",
                 "--unit-price", "70", "--energy-price", "0.22",
                 "--hourly-rate", "1.53", "--quoted", "40404"])
    assert code == 0
    out = capsys.readouterr().out
    assert "own_usd=811.87" in out
    assert "rent_usd=40208.40" in out
    cost_csv = tmp_path / "cost_pixel_10_hosting.csv"
    assert cost_csv.exists()
    rows = list(csv.DictReader(cost_csv.read_text().splitlines()))
    quoted = [r for r in rows if r["provenance"] == "published-override"]
    assert len(quoted) == 1
    assert "differs from rate x hours by" in quoted[0]["note"]


def test_cli_charge_simulate_writes_tables(tmp_path, capsys):
    trace_path = tmp_path / "trace.csv"
    trace_path.write_text(serialize_trace(two_level_trace(days=3)))
    code = main(["--out-dir", str(tmp_path / "out"), "--format", "csv",
                 "charge", "simulate", "--device", "pixel_3a",
                 "--trace", str(trace_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert (tmp_path / "out" / "charge_pixel_3a_schedule.csv").exists()
    assert (tmp_path / "out" / "charge_pixel_3a_summary.csv").exists()
    assert "aggregate_savings_fraction=" in out
    assert "median_daily_savings_fraction=" in out


def test_cli_grid_synth_and_scenario_run(tmp_path, capsys):
    trace_path = tmp_path / "synth.csv"
    assert main(["grid", "synth", "--start", "2021-04-01", "--days", "3",
                 "--seed", "5", "--out", str(trace_path)]) == 0
    assert trace_path.exists()
    code = main(["--out-dir", str(tmp_path / "out"), "--format", "csv",
                 "scenario", "run", "table1"])
    assert code == 0
    assert (tmp_path / "out" / "table1_sizing.csv").exists()
    capsys.readouterr()


def test_cli_dc_pue(capsys):
    assert main(["dc", "pue", "--datacenter", "poweredge_hall"]) == 0
    assert capsys.readouterr().out == "pue=1.31\n"
