"""Grid carbon-intensity traces and energy mixes.

Traces are uniformly sampled time series of grid carbon intensity in
gCO2e/kWh. The canonical CSV wire format is:

    timestamp,intensity_gco2e_kwh
    1617235200,242.1
    1617235500,241.3

with timestamps in UTC epoch seconds. Calendar bucketing (daily
percentile thresholds, per-day statistics) happens in the trace's
declared timezone, which defaults to UTC.
"""
from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass
from datetime import date, datetime, timedelta
from zoneinfo import ZoneInfo

from .errors import InputError, ModelError, TraceError
from .units import SECONDS_PER_DAY

TRACE_HEADER = ("timestamp", "intensity_gco2e_kwh")

# Largest run of missing samples that parse_trace will fill by linear
# interpolation; anything longer is rejected.
MAX_GAP_SAMPLES = 3


@dataclass(frozen=True)
class GridTrace:
    """Uniformly sampled carbon-intensity series.

    Timestamps are UTC epoch seconds, strictly increasing, spaced by
    ``interval`` to within one second. Intensities are gCO2e/kWh and
    non-negative.
    """

    timestamps: tuple[int, ...]
    intensities: tuple[float, ...]
    interval: int
    tz: str = "UTC"

    def __post_init__(self) -> None:
        if self.interval <= 0:
            raise InputError(f"trace interval must be > 0 seconds, got {self.interval}")
        if len(self.timestamps) != len(self.intensities):
            raise InputError(
                f"trace has {len(self.timestamps)} timestamps but {len(self.intensities)} intensities"
            )
        if not self.timestamps:
            raise InputError("trace must contain at least one sample")
        for i, (a, b) in enumerate(zip(self.timestamps, self.timestamps[1:])):
            if b <= a:
                raise InputError(f"trace timestamps not strictly increasing at index {i + 1}")
            if abs((b - a) - self.interval) > 1:
                raise InputError(
                    f"trace spacing {b - a}s at index {i + 1} deviates from interval {self.interval}s"
                )
        for i, value in enumerate(self.intensities):
            if not math.isfinite(value) or value < 0:
                raise InputError(f"trace intensity at index {i} must be finite and >= 0, got {value}")
        try:
            ZoneInfo(self.tz)
        except Exception:
            raise InputError(f"unknown timezone '{self.tz}'") from None

    def __len__(self) -> int:
        return len(self.timestamps)

    @property
    def zone(self) -> ZoneInfo:
        return ZoneInfo(self.tz)

    def local_date(self, ts: int) -> date:
        return datetime.fromtimestamp(ts, tz=self.zone).date()


@dataclass(frozen=True)
class EnergyMix:
    """Energy sources with generation fractions and per-source intensities.

    ``sources`` maps a source name to (fraction, intensity_gco2e_kwh).
    Fractions must sum to 1.
    """

    sources: dict[str, tuple[float, float]]

    def __post_init__(self) -> None:
        if not self.sources:
            raise InputError("energy mix must name at least one source")
        total = 0.0
        for name, (fraction, intensity) in self.sources.items():
            if not (0.0 <= fraction <= 1.0):
                raise InputError(f"mix source '{name}': fraction {fraction} outside [0, 1]")
            if intensity < 0:
                raise InputError(f"mix source '{name}': intensity {intensity} must be >= 0")
            total += fraction
        if abs(total - 1.0) > 1e-6:
            raise InputError(f"mix fractions sum to {total}, expected 1.0")


def mix_intensity(mix: EnergyMix) -> float:
    """Fraction-weighted average intensity of a mix, in gCO2e/kWh."""
    return sum(fraction * intensity for fraction, intensity in mix.sources.values())


# Standard mixes used throughout the bundled scenarios. The California
# entry is the state grid's mean intensity; solar and gas are
# lifecycle intensities for the individual sources.
STANDARD_MIXES: dict[str, EnergyMix] = {
    "california": EnergyMix({"grid_average": (1.0, 257.0)}),
    "solar": EnergyMix({"solar": (1.0, 48.0)}),
    "gas": EnergyMix({"gas": (1.0, 602.0)}),
    "carbon_free": EnergyMix({"carbon_free": (1.0, 0.0)}),
}


def parse_trace(path: str, interval: int, tz: str = "UTC") -> GridTrace:
    """Parse a canonical trace CSV.

    Gaps of up to MAX_GAP_SAMPLES missing samples are filled by linear
    interpolation; larger gaps and irregular spacing are errors that
    name the offending line.
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            return _parse_trace_lines(handle.read().splitlines(), interval, tz, source=str(path))
    except OSError as exc:
        raise TraceError(f"cannot read trace '{path}': {exc}") from None


def parse_trace_text(text: str, interval: int, tz: str = "UTC", source: str = "<string>") -> GridTrace:
    return _parse_trace_lines(text.splitlines(), interval, tz, source=source)


def _parse_trace_lines(lines: list[str], interval: int, tz: str, source: str) -> GridTrace:
    rows = list(csv.reader(lines))
    if not rows:
        raise TraceError(f"{source}: empty trace file")
    if tuple(cell.strip() for cell in rows[0]) != TRACE_HEADER:
        raise TraceError(
            f"{source}: line 1: expected header '{','.join(TRACE_HEADER)}', got '{','.join(rows[0])}'"
        )
    timestamps: list[int] = []
    intensities: list[float] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 2:
            raise TraceError(f"{source}: line {lineno}: expected 2 fields, got {len(row)}")
        try:
            ts = int(row[0])
        except ValueError:
            raise TraceError(f"{source}: line {lineno}: invalid timestamp '{row[0]}'") from None
        try:
            value = float(row[1])
        except ValueError:
            raise TraceError(f"{source}: line {lineno}: invalid intensity '{row[1]}'") from None
        if not math.isfinite(value) or value < 0:
            raise TraceError(f"{source}: line {lineno}: intensity must be finite and >= 0, got {value}")
        if timestamps:
            delta = ts - timestamps[-1]
            if delta <= 0:
                raise TraceError(f"{source}: line {lineno}: timestamps not strictly increasing")
            steps = round(delta / interval)
            if steps < 1 or abs(delta - steps * interval) > 1:
                raise TraceError(
                    f"{source}: line {lineno}: spacing {delta}s is not a whole number of "
                    f"{interval}s intervals"
                )
            if steps - 1 > MAX_GAP_SAMPLES:
                raise TraceError(
                    f"{source}: line {lineno}: gap of {steps - 1} missing samples exceeds "
                    f"the {MAX_GAP_SAMPLES}-sample limit"
                )
            prev_ts, prev_value = timestamps[-1], intensities[-1]
            for k in range(1, steps):
                timestamps.append(prev_ts + k * interval)
                intensities.append(prev_value + (value - prev_value) * k / steps)
        timestamps.append(ts)
        intensities.append(value)
    if not timestamps:
        raise TraceError(f"{source}: trace contains no samples")
    try:
        return GridTrace(tuple(timestamps), tuple(intensities), interval, tz)
    except InputError as exc:
        raise TraceError(f"{source}: {exc}") from None


def serialize_trace(trace: GridTrace) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for ts, value in zip(trace.timestamps, trace.intensities):
        writer.writerow([ts, repr(value)])
    return out.getvalue()


def write_trace(trace: GridTrace, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(serialize_trace(trace))


def nearest_rank(values: list[float], p: float) -> float:
    """Nearest-rank percentile: the smallest value with at least p% of
    the sample at or below it."""
    if not values:
        raise ModelError("percentile of an empty sample is undefined")
    if not (0.0 <= p <= 100.0):
        raise InputError(f"percentile {p} outside [0, 100]")
    ordered = sorted(values)
    # Multiply before dividing so integer-valued ranks stay exact.
    rank = math.ceil(p * len(ordered) / 100.0 - 1e-9)
    rank = min(max(rank, 1), len(ordered))
    return ordered[rank - 1]


def day_samples(trace: GridTrace, day: date) -> list[float]:
    """Intensities of all samples whose local date equals ``day``."""
    zone = trace.zone
    start = int(datetime.combine(day, datetime.min.time(), tzinfo=zone).timestamp())
    end = int(datetime.combine(day + timedelta(days=1), datetime.min.time(), tzinfo=zone).timestamp())
    return [v for ts, v in zip(trace.timestamps, trace.intensities) if start <= ts < end]


def percentile_threshold(trace: GridTrace, day: date, p: float) -> float:
    """Nearest-rank p-th percentile of one full local day of samples."""
    zone = trace.zone
    start = int(datetime.combine(day, datetime.min.time(), tzinfo=zone).timestamp())
    end = int(datetime.combine(day + timedelta(days=1), datetime.min.time(), tzinfo=zone).timestamp())
    samples = [v for ts, v in zip(trace.timestamps, trace.intensities) if start <= ts < end]
    expected = (end - start) // trace.interval
    if len(samples) < expected:
        raise InputError(
            f"day {day.isoformat()} not fully covered: {len(samples)} of {expected} samples present"
        )
    return nearest_rank(samples, p)


def mean_intensity(trace: GridTrace, window: tuple[int, int] | None = None) -> float:
    """Arithmetic mean intensity over a half-open [start, end) window.

    With no window, averages the whole trace.
    """
    if window is None:
        values = trace.intensities
    else:
        start, end = window
        values = [v for ts, v in zip(trace.timestamps, trace.intensities) if start <= ts < end]
    if not values:
        raise ModelError("mean intensity over an empty window is undefined")
    return sum(values) / len(values)


def synthetic_trace(
    start: date,
    days: int,
    interval: int = 300,
    seed: int = 0,
    base: float = 290.0,
    amplitude: float = 20.0,
    peak_hour: float = 20.0,
    dip_depth: float = 115.0,
    dip_center_hour: float = 13.0,
    dip_width_hours: float = 3.0,
    noise: float = 6.0,
    tz: str = "UTC",
) -> GridTrace:
    """Deterministic synthetic daily-cycle trace.

    The shape is a diurnal sinusoid peaking at ``peak_hour`` with a
    Gaussian midday dip (solar backing out fossil generation) plus
    seeded Gaussian noise, clamped to stay positive. Defaults are tuned
    to look like a spring month on a solar-heavy grid: mean around
    250 gCO2e/kWh, midday floor near 170, evening peak above 300.
    """
    if days < 1:
        raise InputError(f"synthetic trace needs days >= 1, got {days}")
    zone = ZoneInfo(tz)
    start_ts = int(datetime.combine(start, datetime.min.time(), tzinfo=zone).timestamp())
    count = days * SECONDS_PER_DAY // interval
    rng = random.Random(seed)
    timestamps = []
    intensities = []
    for i in range(count):
        ts = start_ts + i * interval
        hour = ((ts - start_ts) % SECONDS_PER_DAY) / 3600.0
        diurnal = base + amplitude * math.cos(2.0 * math.pi * (hour - peak_hour) / 24.0)
        dip = dip_depth * math.exp(-((hour - dip_center_hour) ** 2) / (2.0 * dip_width_hours**2))
        value = diurnal - dip + rng.gauss(0.0, noise)
        timestamps.append(ts)
        intensities.append(max(value, 5.0))
    return GridTrace(tuple(timestamps), tuple(intensities), interval, tz)


def convert_caiso_rows(
    rows: list[dict[str, str]],
    time_col: str,
    co2_col: str,
    supply_col: str,
    day: date,
    interval: int = 300,
    tz: str = "America/Los_Angeles",
) -> GridTrace:
    """Approximate a carbon-intensity trace from grid-operator CSV rows.

    Expects one row per sample with a local HH:MM time column, a
    system-wide CO2 rate in metric tons per hour, and total supply in
    MW. Intensity is the ratio: 1000 * (mt/h) / MW = gCO2e/kWh. The
    published files do not state the exact derivation behind official
    intensity series, so this converter is a documented approximation.
    """
    zone = ZoneInfo(tz)
    timestamps = []
    intensities = []
    for i, row in enumerate(rows, start=2):
        for col in (time_col, co2_col, supply_col):
            if col not in row or row[col] is None:
                raise TraceError(f"row {i}: missing column '{col}'")
        raw_time = row[time_col].strip()
        try:
            hh, mm = raw_time.split(":")
            local = datetime.combine(day, datetime.min.time(), tzinfo=zone) + timedelta(
                hours=int(hh), minutes=int(mm)
            )
        except (ValueError, AttributeError):
            raise TraceError(f"row {i}: invalid time '{raw_time}' (expected HH:MM)") from None
        try:
            co2_rate = float(row[co2_col])
            supply_mw = float(row[supply_col])
        except ValueError:
            raise TraceError(f"row {i}: invalid numeric CO2/supply values") from None
        if supply_mw <= 0:
            raise TraceError(f"row {i}: supply must be > 0 MW, got {supply_mw}")
        timestamps.append(int(local.timestamp()))
        intensities.append(max(1000.0 * co2_rate / supply_mw, 0.0))
    if not timestamps:
        raise TraceError("no rows to convert")
    try:
        return GridTrace(tuple(timestamps), tuple(intensities), interval, tz)
    except InputError as exc:
        raise TraceError(str(exc)) from None


def import_caiso(
    in_path: str,
    time_col: str = "Time",
    co2_col: str = "CO2",
    supply_col: str = "Supply",
    day: date | None = None,
    interval: int = 300,
    tz: str = "America/Los_Angeles",
) -> GridTrace:
    """Read a grid-operator daily CSV and convert it to a GridTrace."""
    if day is None:
        raise InputError("import requires the calendar date the file covers (--date)")
    try:
        with open(in_path, "r", encoding="utf-8", newline="") as handle:
            rows = list(csv.DictReader(handle))
    except OSError as exc:
        raise TraceError(f"cannot read '{in_path}': {exc}") from None
    return convert_caiso_rows(rows, time_col, co2_col, supply_col, day, interval, tz)
