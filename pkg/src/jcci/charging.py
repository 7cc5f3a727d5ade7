"""Carbon-aware charge scheduling against a grid trace.

The device runs off its battery and the charger only draws from the
wall when grid intensity is attractive or the battery needs rescuing.
Per trace step the schedule charges iff

    soc < min_soc                      (forced, keep the device alive)
    or intensity <= threshold(day)     (opportunistic, battery not full)

where threshold(day) is the nearest-rank p-th percentile of the
previous local calendar day's intensities. The first day has no
predecessor and bootstraps from itself. When p is not given it is
duty-matched: the percentage of time the charger must run to keep up
with consumption.

The baseline for savings is the same device drawing its average power
straight from the wall at every step.
"""
from __future__ import annotations

import statistics
from dataclasses import dataclass
from datetime import date, timedelta

from .errors import InputError, ModelError
from .grid import GridTrace, nearest_rank
from .registry import DeviceProfile, LoadProfile, avg_power
from .units import energy_emissions_kg


@dataclass(frozen=True)
class ChargePolicy:
    percentile_p: float | None = None  # None: duty-matched
    min_soc: float = 0.25
    charge_efficiency: float = 1.0

    def __post_init__(self) -> None:
        if self.percentile_p is not None and not (0.0 <= self.percentile_p <= 100.0):
            raise InputError(f"percentile_p {self.percentile_p} outside [0, 100]")
        if not (0.0 <= self.min_soc < 1.0):
            raise InputError(f"min_soc {self.min_soc} outside [0, 1)")
        if not (0.0 < self.charge_efficiency <= 1.0):
            raise InputError(f"charge_efficiency {self.charge_efficiency} outside (0, 1]")


@dataclass(frozen=True)
class BatteryState:
    soc: float
    cumulative_charge_energy: float  # wall-side joules
    equivalent_cycles: float


@dataclass(frozen=True)
class ChargeStep:
    timestamp: int
    intensity: float
    soc: float  # state of charge after the step
    charging: bool
    forced: bool
    wall_energy: float  # joules drawn this step


@dataclass(frozen=True)
class DayStats:
    day: date
    smart_carbon: float
    baseline_carbon: float
    savings_fraction: float


@dataclass(frozen=True)
class ChargeSimResult:
    smart_carbon: float  # kg
    baseline_carbon: float  # kg
    savings_fraction: float
    schedule: tuple[tuple[int, int], ...]  # half-open charge windows [start, end)
    final_state: BatteryState
    forced_charge_steps: int
    steps: tuple[ChargeStep, ...]
    daily: tuple[DayStats, ...]
    consumed_energy: float  # joules actually drawn from the battery

    @property
    def median_daily_savings(self) -> float:
        if not self.daily:
            raise ModelError("no full days with nonzero baseline carbon to summarize")
        return statistics.median(day.savings_fraction for day in self.daily)


def required_duty(device: DeviceProfile, load: LoadProfile) -> float:
    """Percent of time the charger must run to match consumption."""
    battery = _battery(device)
    duty = 100.0 * avg_power(device.power, load) / battery.charge_power
    if duty > 100.0:
        raise ModelError(
            f"device {device.name} consumes more than its charger can deliver "
            f"(duty {duty:.1f}%)"
        )
    return duty


def backup_runtime(device: DeviceProfile, load: LoadProfile, soc: float) -> float:
    """Seconds the device can run from the given state of charge."""
    battery = _battery(device)
    if not (0.0 <= soc <= 1.0):
        raise InputError(f"soc {soc} outside [0, 1]")
    power = avg_power(device.power, load)
    if power <= 0:
        raise ModelError(f"device {device.name} draws no power; runtime is unbounded")
    return soc * battery.usable_energy / power


def simulate(
    device: DeviceProfile,
    load: LoadProfile,
    trace: GridTrace,
    policy: ChargePolicy = ChargePolicy(),
    initial_soc: float = 1.0,
) -> ChargeSimResult:
    """Run the charge schedule over a trace and price it against the baseline."""
    battery = _battery(device)
    if not (0.0 <= initial_soc <= 1.0):
        raise InputError(f"initial_soc {initial_soc} outside [0, 1]")
    power = avg_power(device.power, load)
    p = policy.percentile_p if policy.percentile_p is not None else required_duty(device, load)

    dates = sorted({trace.local_date(ts) for ts in trace.timestamps})
    if len(dates) < 2:
        raise InputError("trace must span at least 2 calendar days")
    by_day: dict[date, list[float]] = {}
    for ts, value in zip(trace.timestamps, trace.intensities):
        by_day.setdefault(trace.local_date(ts), []).append(value)
    first_day = dates[0]
    thresholds: dict[date, float] = {}
    for day in dates:
        source_day = day - timedelta(days=1)
        if source_day not in by_day:
            source_day = first_day  # bootstrap: no previous day in the trace
        thresholds[day] = nearest_rank(by_day[source_day], p)

    usable = battery.usable_energy
    eff = policy.charge_efficiency
    dt = trace.interval
    soc = initial_soc
    wall_total = 0.0
    consumed = 0.0
    smart_kg = 0.0
    baseline_kg = 0.0
    forced_steps = 0
    steps: list[ChargeStep] = []
    day_smart: dict[date, float] = {}
    day_baseline: dict[date, float] = {}

    for ts, intensity in zip(trace.timestamps, trace.intensities):
        day = trace.local_date(ts)
        # The device always runs; drain what the battery can supply.
        drawn = min(power * dt, soc * usable)
        soc -= drawn / usable
        consumed += drawn

        forced = soc < policy.min_soc
        charging = forced or (intensity <= thresholds[day] and soc < 1.0)
        wall = 0.0
        if charging:
            into_battery = min(battery.charge_power * dt * eff, (1.0 - soc) * usable)
            wall = into_battery / eff  # partial steps prorate the wall draw
            soc += into_battery / usable
            wall_total += wall
            if forced:
                forced_steps += 1
        step_smart = energy_emissions_kg(wall, intensity)
        step_baseline = energy_emissions_kg(power * dt, intensity)
        smart_kg += step_smart
        baseline_kg += step_baseline
        day_smart[day] = day_smart.get(day, 0.0) + step_smart
        day_baseline[day] = day_baseline.get(day, 0.0) + step_baseline
        soc = min(max(soc, 0.0), 1.0)
        steps.append(ChargeStep(ts, intensity, soc, charging, forced and charging, wall))

    schedule = _charge_windows(steps, dt)
    daily = tuple(
        DayStats(
            day=day,
            smart_carbon=day_smart[day],
            baseline_carbon=day_baseline[day],
            savings_fraction=1.0 - day_smart[day] / day_baseline[day],
        )
        for day in dates
        if day_baseline.get(day, 0.0) > 0.0
    )
    savings = 1.0 - smart_kg / baseline_kg if baseline_kg > 0.0 else 0.0
    final = BatteryState(
        soc=soc,
        cumulative_charge_energy=wall_total,
        equivalent_cycles=wall_total * eff / usable,
    )
    return ChargeSimResult(
        smart_carbon=smart_kg,
        baseline_carbon=baseline_kg,
        savings_fraction=savings,
        schedule=schedule,
        final_state=final,
        forced_charge_steps=forced_steps,
        steps=tuple(steps),
        daily=daily,
        consumed_energy=consumed,
    )


def _charge_windows(steps: list[ChargeStep], dt: int) -> tuple[tuple[int, int], ...]:
    windows: list[tuple[int, int]] = []
    start: int | None = None
    prev_end = 0
    for step in steps:
        if step.charging:
            if start is None:
                start = step.timestamp
            prev_end = step.timestamp + dt
        elif start is not None:
            windows.append((start, prev_end))
            start = None
    if start is not None:
        windows.append((start, prev_end))
    return tuple(windows)


def _battery(device: DeviceProfile):
    if device.battery is None:
        raise InputError(f"device {device.name} has no battery")
    return device.battery
