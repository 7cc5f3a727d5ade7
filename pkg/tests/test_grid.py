from datetime import date

import pytest
from pytest import approx

from jcci.errors import InputError, ModelError, TraceError
from jcci.grid import (
    STANDARD_MIXES,
    EnergyMix,
    GridTrace,
    convert_caiso_rows,
    day_samples,
    import_caiso,
    mean_intensity,
    mix_intensity,
    nearest_rank,
    parse_trace_text,
    percentile_threshold,
    serialize_trace,
    synthetic_trace,
)

from conftest import flat_trace


def make_text(rows, header="timestamp,intensity_gco2e_kwh"):
    return "\n".join([header] + rows) + "\n"


def test_parse_round_trip():
    trace = flat_trace(days=1, intensity=123.5)
    again = parse_trace_text(serialize_trace(trace), trace.interval, trace.tz)
    assert again == trace


def test_parse_rejects_wrong_header():
    text = make_text(["0,100"], header="time,ci")
    with pytest.raises(TraceError, match="line 1: expected header"):
        parse_trace_text(text, 300)


def test_parse_rejects_bad_fields():
    with pytest.raises(TraceError, match="line 2: invalid timestamp"):
        parse_trace_text(make_text(["soon,100"]), 300)
    with pytest.raises(TraceError, match="line 3: invalid intensity"):
        parse_trace_text(make_text(["0,100", "300,lots"]), 300)
    with pytest.raises(TraceError, match="line 3: intensity must be finite"):
        parse_trace_text(make_text(["0,100", "300,-4"]), 300)
    with pytest.raises(TraceError, match="not strictly increasing"):
        parse_trace_text(make_text(["300,100", "300,110"]), 300)


def test_parse_fills_short_gaps_by_interpolation():
    # one sample missing at t=300: interpolated midpoint
    text = make_text(["0,100", "600,140", "900,150"])
    trace = parse_trace_text(text, 300)
    assert trace.timestamps == (0, 300, 600, 900)
    assert trace.intensities[1] == approx(120.0)


def test_parse_rejects_long_gaps():
    # four samples missing exceeds the interpolation allowance of 3
    text = make_text(["0,100", "1500,150"])
    with pytest.raises(TraceError, match="line 3"):
        parse_trace_text(text, 300)


def test_parse_rejects_off_grid_spacing():
    text = make_text(["0,100", "450,150"])
    with pytest.raises(TraceError, match="whole number"):
        parse_trace_text(text, 300)


def test_trace_validation():
    with pytest.raises(InputError, match="at least one sample"):
        GridTrace((), (), 300)
    with pytest.raises(InputError, match="unknown timezone"):
        GridTrace((0,), (100.0,), 300, "Mars/Olympus")
    with pytest.raises(InputError, match="strictly increasing"):
        GridTrace((0, 0), (1.0, 1.0), 300)


def test_mix_intensity_weighted_sum():
    mix = EnergyMix({"solar": (0.5, 48.0), "gas": (0.5, 602.0)})
    assert mix_intensity(mix) == approx(325.0)
    assert mix_intensity(STANDARD_MIXES["california"]) == 257.0
    assert mix_intensity(STANDARD_MIXES["solar"]) == 48.0
    assert mix_intensity(STANDARD_MIXES["carbon_free"]) == 0.0


def test_nearest_rank_examples():
    values = [float(v) for v in range(1, 11)]
    assert nearest_rank(values, 30.0) == 3.0
    assert nearest_rank(values, 0.0) == 1.0
    assert nearest_rank(values, 100.0) == 10.0
    # rank stays exact where p*n/100 is an integer
    assert nearest_rank(values, 10.0) == 1.0
    assert nearest_rank([4.0, 1.0, 3.0, 2.0], 25.0) == 1.0
    with pytest.raises(ModelError):
        nearest_rank([], 50.0)
    with pytest.raises(InputError):
        nearest_rank(values, 101.0)


def test_percentile_threshold_requires_full_day():
    trace = flat_trace(days=2, intensity=200.0)
    day = trace.local_date(trace.timestamps[0])
    assert percentile_threshold(trace, day, 10.0) == 200.0
    # drop the first hour of samples: day no longer fully covered
    clipped = GridTrace(trace.timestamps[12:], trace.intensities[12:], 300, "UTC")
    with pytest.raises(InputError, match="not fully covered"):
        percentile_threshold(clipped, day, 10.0)


def test_day_samples_counts(two_day=flat_trace(days=2)):
    day = two_day.local_date(two_day.timestamps[0])
    assert len(day_samples(two_day, day)) == 288


def test_mean_intensity_window():
    trace = flat_trace(days=1, intensity=100.0)
    assert mean_intensity(trace) == 100.0
    start = trace.timestamps[0]
    assert mean_intensity(trace, (start, start + 3600)) == 100.0
    with pytest.raises(ModelError):
        mean_intensity(trace, (start - 7200, start - 3600))


def test_synthetic_trace_deterministic_and_daily():
    a = synthetic_trace(date(2021, 4, 1), days=3, seed=7)
    b = synthetic_trace(date(2021, 4, 1), days=3, seed=7)
    assert a == b
    c = synthetic_trace(date(2021, 4, 1), days=3, seed=8)
    assert c != a
    assert len(a) == 3 * 288
    assert min(a.intensities) >= 5.0
    # midday dip: cheapest sample lands within the solar hours
    first_day = a.intensities[:288]
    dip_index = first_day.index(min(first_day))
    assert 10 * 12 <= dip_index <= 16 * 12
    with pytest.raises(InputError):
        synthetic_trace(date(2021, 4, 1), days=0)


def test_convert_caiso_rows():
    rows = [
        {"Time": "00:00", "CO2": "100.0", "Supply": "20000"},
        {"Time": "00:05", "CO2": "110.0", "Supply": "20000"},
        {"Time": "00:10", "CO2": "121.0", "Supply": "22000"},
    ]
    trace = convert_caiso_rows(rows, "Time", "CO2", "Supply", date(2021, 4, 1), 300,
                               "America/Los_Angeles")
    assert len(trace) == 3
    # metric tons/h over MW becomes g/kWh via a factor of 1000
    assert trace.intensities[0] == approx(1000.0 * 100.0 / 20000.0)
    assert trace.intensities[2] == approx(1000.0 * 121.0 / 22000.0)
    assert trace.tz == "America/Los_Angeles"


def test_convert_caiso_rejects_missing_column():
    rows = [{"Time": "00:00", "CO2": "100.0"}]
    with pytest.raises(TraceError, match="missing column 'Supply'"):
        convert_caiso_rows(rows, "Time", "CO2", "Supply", date(2021, 4, 1), 300, "UTC")


def test_import_caiso_requires_date(tmp_path):
    path = tmp_path / "day.csv"
    path.write_text("Time,CO2,Supply\n00:00,100,20000\n")
    with pytest.raises(InputError, match="--date"):
        import_caiso(str(path))
