"""Device, peripheral, and workload registry.

The registry is a human-editable INI-style text file. Records live in
dotted sections and every numeric field carries its unit in the field
name:

    [device.pixel_3a]
    release_year = 2019
    p100_w = 2.5
    p50_w = 1.9
    p10_w = 1.4
    p_idle_w = 0.8
    embodied_kgco2e = 45.0
    reused = true

    [device.pixel_3a.battery]
    capacity_ah = 3.0
    nominal_voltage_v = 3.85
    usable_energy_j = 45000
    charge_power_w = 18
    cycle_limit = 2500
    embodied_kgco2e = 2.0

    [device.pixel_3a.benchmark.sgemm]
    unit = Gflops
    single = 8.84
    multi = 39.0
    published_n = 54

    [device.pixel_3a.breakdown]
    compute = 0.25
    ...

    [peripheral.server_fan]
    embodied_kgco2e = 9.3
    active_power_w = 4.0
    rating_w = 500

    [load_profile.light_medium]
    load_1.0 = 0.10
    load_0.5 = 0.35
    load_0.1 = 0.30
    load_0.0 = 0.25

Each record may carry a free-form ``note`` field describing where its
numbers came from (vendor lifecycle assessment, plug-through power
meter, published sizing figure, estimate). ``published_n`` on a
benchmark preserves an externally published cluster size when it
disagrees with the ceiling rule; reports show both values.

A loaded Registry is read-only. Records are frozen dataclasses and the
loader never mutates them after construction.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from importlib import resources

from .errors import InputError, RegistryError

COMPONENT_CATEGORIES = (
    "compute",
    "network",
    "battery",
    "display",
    "storage",
    "sensors",
    "other",
)


@dataclass(frozen=True)
class PowerProfile:
    """Wall power in watts at the four measured load set points."""

    p100: float
    p50: float
    p10: float
    p_idle: float

    def __post_init__(self) -> None:
        for name in ("p100", "p50", "p10", "p_idle"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise InputError(f"power profile: {name} must be finite and >= 0, got {value}")
        if not (self.p100 >= self.p50 >= self.p10 >= self.p_idle):
            raise InputError(
                "power profile not monotone: requires p100 >= p50 >= p10 >= p_idle, "
                f"got {self.p100}/{self.p50}/{self.p10}/{self.p_idle}"
            )

    def at(self, load: float) -> float:
        """Wall power at a load fraction in [0, 1].

        The four measured set points sit at loads 0.0, 0.1, 0.5, and 1.0;
        anything in between is linearly interpolated.
        """
        if not 0.0 <= load <= 1.0:
            raise InputError(f"load fraction {load} outside [0, 1]")
        points = ((0.0, self.p_idle), (0.1, self.p10), (0.5, self.p50), (1.0, self.p100))
        for (x0, y0), (x1, y1) in zip(points, points[1:]):
            if x0 <= load <= x1:
                return y0 + (y1 - y0) * (load - x0) / (x1 - x0)
        raise AssertionError("unreachable")


@dataclass(frozen=True)
class BenchmarkSpec:
    """Measured throughput for one benchmark on one device.

    ``single`` and ``multi`` are single-core and all-core scores in
    ``unit`` per second. ``published_n`` optionally records an externally
    published equivalent-cluster size for this device against the
    baseline; it is informational and never feeds the sizing arithmetic.
    """

    name: str
    unit: str
    single: float
    multi: float
    published_n: int | None = None

    def __post_init__(self) -> None:
        if not self.name:
            raise InputError("benchmark name must be non-empty")
        if not (self.single > 0 and math.isfinite(self.single)):
            raise InputError(f"benchmark {self.name}: single score must be > 0, got {self.single}")
        if not (self.multi >= self.single):
            raise InputError(
                f"benchmark {self.name}: multi score {self.multi} must be >= single score {self.single}"
            )
        if self.published_n is not None and self.published_n < 1:
            raise InputError(f"benchmark {self.name}: published_n must be >= 1, got {self.published_n}")


@dataclass(frozen=True)
class BatterySpec:
    """Battery pack parameters.

    ``usable_energy`` defaults to capacity_ah * 3600 * nominal_voltage;
    pass an explicit value to override when a measured figure is
    available. Cycle accounting treats the pack as dead after
    ``cycle_limit`` equivalent full cycles.
    """

    capacity_ah: float
    nominal_voltage: float
    charge_power: float
    cycle_limit: float
    embodied_carbon: float
    usable_energy: float | None = None

    def __post_init__(self) -> None:
        for name in ("capacity_ah", "nominal_voltage", "charge_power", "cycle_limit", "embodied_carbon"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise InputError(f"battery: {name} must be finite and > 0, got {value}")
        if self.usable_energy is None:
            object.__setattr__(
                self, "usable_energy", self.capacity_ah * 3600.0 * self.nominal_voltage
            )
        elif not (math.isfinite(self.usable_energy) and self.usable_energy > 0):
            raise InputError(f"battery: usable_energy must be > 0, got {self.usable_energy}")


@dataclass(frozen=True)
class ComponentBreakdown:
    """Embodied-carbon share per component category.

    Fractions are keyed by the fixed category vocabulary and must sum
    to 1. Categories absent from the mapping contribute zero.
    """

    fractions: dict[str, float]

    def __post_init__(self) -> None:
        total = 0.0
        for category, fraction in self.fractions.items():
            if category not in COMPONENT_CATEGORIES:
                raise InputError(
                    f"breakdown: unknown category '{category}' "
                    f"(expected one of {', '.join(COMPONENT_CATEGORIES)})"
                )
            if not (0.0 <= fraction <= 1.0):
                raise InputError(f"breakdown: {category} fraction {fraction} outside [0, 1]")
            total += fraction
        if abs(total - 1.0) > 1e-6:
            raise InputError(f"breakdown: fractions sum to {total}, expected 1.0")

    def fraction(self, category: str) -> float:
        if category not in COMPONENT_CATEGORIES:
            raise InputError(f"breakdown: unknown category '{category}'")
        return self.fractions.get(category, 0.0)


@dataclass(frozen=True)
class DeviceProfile:
    name: str
    release_year: int
    power: PowerProfile
    benchmarks: tuple[BenchmarkSpec, ...]
    embodied_carbon_total: float
    breakdown: ComponentBreakdown
    battery: BatterySpec | None = None
    reused: bool = False
    note: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            raise InputError("device name must be non-empty")
        if self.embodied_carbon_total < 0:
            raise InputError(
                f"device {self.name}: embodied_carbon_total must be >= 0, got {self.embodied_carbon_total}"
            )
        seen: set[str] = set()
        for bench in self.benchmarks:
            if bench.name in seen:
                raise InputError(f"device {self.name}: duplicate benchmark '{bench.name}'")
            seen.add(bench.name)

    def benchmark(self, name: str) -> BenchmarkSpec:
        for bench in self.benchmarks:
            if bench.name == name:
                return bench
        raise InputError(f"device {self.name} has no benchmark '{name}'")


@dataclass(frozen=True)
class Peripheral:
    """Support hardware charged to a cluster but contributing no operations."""

    name: str
    embodied_carbon: float
    active_power: float
    rating: float | None = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.embodied_carbon < 0:
            raise InputError(f"peripheral {self.name}: embodied_kgco2e must be >= 0")
        if self.active_power < 0:
            raise InputError(f"peripheral {self.name}: active_power_w must be >= 0")
        if self.rating is not None and self.rating <= 0:
            raise InputError(f"peripheral {self.name}: rating_w must be > 0 when present")


@dataclass(frozen=True)
class LoadProfile:
    """Duty-cycle mix: (load_fraction, time_fraction) pairs.

    Time fractions must sum to 1 and load fractions must be distinct.
    """

    name: str
    levels: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise InputError(f"load profile {self.name}: needs at least one level")
        loads = [load for load, _ in self.levels]
        if len(set(loads)) != len(loads):
            raise InputError(f"load profile {self.name}: load fractions must be distinct")
        total = 0.0
        for load, time_fraction in self.levels:
            if not (0.0 <= load <= 1.0):
                raise InputError(f"load profile {self.name}: load fraction {load} outside [0, 1]")
            if not (0.0 <= time_fraction <= 1.0):
                raise InputError(f"load profile {self.name}: time fraction {time_fraction} outside [0, 1]")
            total += time_fraction
        if abs(total - 1.0) > 1e-6:
            raise InputError(f"load profile {self.name}: time fractions sum to {total}, expected 1.0")


@dataclass(frozen=True)
class Registry:
    devices: dict[str, DeviceProfile] = field(default_factory=dict)
    peripherals: dict[str, Peripheral] = field(default_factory=dict)
    load_profiles: dict[str, LoadProfile] = field(default_factory=dict)
    source: str = field(default="", compare=False)

    def device(self, name: str) -> DeviceProfile:
        try:
            return self.devices[name]
        except KeyError:
            raise RegistryError(f"unknown device '{name}' (registry: {self.source or 'in-memory'})") from None

    def peripheral(self, name: str) -> Peripheral:
        try:
            return self.peripherals[name]
        except KeyError:
            raise RegistryError(f"unknown peripheral '{name}' (registry: {self.source or 'in-memory'})") from None

    def load_profile(self, name: str) -> LoadProfile:
        try:
            return self.load_profiles[name]
        except KeyError:
            raise RegistryError(f"unknown load profile '{name}' (registry: {self.source or 'in-memory'})") from None


def avg_power(power: PowerProfile, load: LoadProfile) -> float:
    """Time-weighted average wall power over a duty-cycle mix, in watts."""
    return sum(time_fraction * power.at(load_fraction) for load_fraction, time_fraction in load.levels)


def avg_ops_rate(bench: BenchmarkSpec, load: LoadProfile) -> float:
    """Delivered throughput under a duty-cycle mix, in bench units per second.

    Throughput is assumed proportional to load, so the idle share
    contributes nothing.
    """
    utilization = sum(time_fraction * load_fraction for load_fraction, time_fraction in load.levels)
    return bench.multi * utilization


class _SectionReader:
    """Typed field access with section-qualified error messages."""

    def __init__(self, section: str, values: dict[str, str]):
        self.section = section
        self.values = values
        self.used: set[str] = set()

    def _raw(self, key: str) -> str:
        if key not in self.values:
            raise RegistryError(f"[{self.section}] missing required field '{key}'")
        self.used.add(key)
        return self.values[key]

    def text(self, key: str, default: str | None = None) -> str:
        if key not in self.values:
            if default is None:
                raise RegistryError(f"[{self.section}] missing required field '{key}'")
            return default
        return self._raw(key)

    def number(self, key: str, default: float | None = None) -> float:
        if key not in self.values and default is not None:
            return default
        raw = self._raw(key)
        try:
            return float(raw)
        except ValueError:
            raise RegistryError(f"[{self.section}] field '{key}': invalid number '{raw}'") from None

    def integer(self, key: str, default: int | None = None) -> int:
        if key not in self.values and default is not None:
            return default
        raw = self._raw(key)
        try:
            return int(raw)
        except ValueError:
            raise RegistryError(f"[{self.section}] field '{key}': invalid integer '{raw}'") from None

    def optional_number(self, key: str) -> float | None:
        if key not in self.values:
            return None
        return self.number(key)

    def optional_integer(self, key: str) -> int | None:
        if key not in self.values:
            return None
        return self.integer(key)

    def boolean(self, key: str, default: bool = False) -> bool:
        if key not in self.values:
            return default
        raw = self._raw(key).strip().lower()
        if raw in ("true", "yes", "1", "on"):
            return True
        if raw in ("false", "no", "0", "off"):
            return False
        raise RegistryError(f"[{self.section}] field '{key}': invalid boolean '{raw}'")


def _read_sections(text: str, source: str) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser(interpolation=None, delimiters=("=",), strict=True)
    # Values keep their case; keys are lowered by configparser, which suits
    # the all-lowercase field vocabulary.
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise RegistryError(f"{source}: {exc}") from None
    return {name: dict(parser.items(name)) for name in parser.sections()}


def parse_registry(text: str, source: str = "<string>") -> Registry:
    """Parse registry text into an immutable Registry."""
    sections = _read_sections(text, source)
    if not sections:
        raise RegistryError(f"{source}: no records")

    device_base: dict[str, _SectionReader] = {}
    device_battery: dict[str, _SectionReader] = {}
    device_breakdown: dict[str, _SectionReader] = {}
    device_benchmarks: dict[str, list[tuple[str, _SectionReader]]] = {}
    peripherals: dict[str, Peripheral] = {}
    load_profiles: dict[str, LoadProfile] = {}

    for section, values in sections.items():
        parts = section.split(".")
        reader = _SectionReader(section, values)
        if parts[0] == "device" and len(parts) == 2:
            device_base[parts[1]] = reader
        elif parts[0] == "device" and len(parts) == 3 and parts[2] == "battery":
            device_battery[parts[1]] = reader
        elif parts[0] == "device" and len(parts) == 3 and parts[2] == "breakdown":
            device_breakdown[parts[1]] = reader
        elif parts[0] == "device" and len(parts) == 4 and parts[2] == "benchmark":
            device_benchmarks.setdefault(parts[1], []).append((parts[3], reader))
        elif parts[0] == "peripheral" and len(parts) == 2:
            try:
                peripherals[parts[1]] = Peripheral(
                    name=parts[1],
                    embodied_carbon=reader.number("embodied_kgco2e"),
                    active_power=reader.number("active_power_w"),
                    rating=reader.optional_number("rating_w"),
                    note=reader.text("note", ""),
                )
            except InputError as exc:
                raise RegistryError(f"[{section}] {exc}") from None
        elif parts[0] == "load_profile" and len(parts) == 2:
            load_profiles[parts[1]] = _parse_load_profile(parts[1], reader)
        else:
            raise RegistryError(f"{source}: unrecognized section [{section}]")

    for name in list(device_battery) + list(device_breakdown) + list(device_benchmarks):
        if name not in device_base:
            raise RegistryError(f"{source}: sub-section for undeclared device '{name}'")

    devices: dict[str, DeviceProfile] = {}
    for name, reader in device_base.items():
        devices[name] = _parse_device(
            name,
            reader,
            device_battery.get(name),
            device_breakdown.get(name),
            device_benchmarks.get(name, []),
        )

    return Registry(devices=devices, peripherals=peripherals, load_profiles=load_profiles, source=source)


def _parse_load_profile(name: str, reader: _SectionReader) -> LoadProfile:
    levels = []
    for key, raw in reader.values.items():
        if key == "note":
            continue
        if not key.startswith("load_"):
            raise RegistryError(f"[{reader.section}] unexpected field '{key}' (expected load_<fraction>)")
        try:
            load_fraction = float(key[len("load_"):])
            time_fraction = float(raw)
        except ValueError:
            raise RegistryError(f"[{reader.section}] field '{key}': invalid number") from None
        levels.append((load_fraction, time_fraction))
    try:
        return LoadProfile(name=name, levels=tuple(levels))
    except InputError as exc:
        raise RegistryError(f"[{reader.section}] {exc}") from None


def _parse_device(
    name: str,
    base: _SectionReader,
    battery: _SectionReader | None,
    breakdown: _SectionReader | None,
    benchmarks: list[tuple[str, _SectionReader]],
) -> DeviceProfile:
    section = base.section
    try:
        power = PowerProfile(
            p100=base.number("p100_w"),
            p50=base.number("p50_w"),
            p10=base.number("p10_w"),
            p_idle=base.number("p_idle_w"),
        )
        battery_spec = None
        if battery is not None:
            battery_spec = BatterySpec(
                capacity_ah=battery.number("capacity_ah"),
                nominal_voltage=battery.number("nominal_voltage_v"),
                charge_power=battery.number("charge_power_w"),
                cycle_limit=battery.number("cycle_limit"),
                embodied_carbon=battery.number("embodied_kgco2e"),
                usable_energy=battery.optional_number("usable_energy_j"),
            )
        if breakdown is None:
            raise RegistryError(f"[{section}] device '{name}' has no [device.{name}.breakdown] section")
        fractions = {}
        for key, raw in breakdown.values.items():
            if key == "note":
                continue
            try:
                fractions[key] = float(raw)
            except ValueError:
                raise RegistryError(
                    f"[{breakdown.section}] field '{key}': invalid number '{raw}'"
                ) from None
        bench_specs = []
        for bench_name, reader in benchmarks:
            bench_specs.append(
                BenchmarkSpec(
                    name=bench_name,
                    unit=reader.text("unit"),
                    single=reader.number("single"),
                    multi=reader.number("multi"),
                    published_n=reader.optional_integer("published_n"),
                )
            )
        return DeviceProfile(
            name=name,
            release_year=base.integer("release_year"),
            power=power,
            benchmarks=tuple(bench_specs),
            embodied_carbon_total=base.number("embodied_kgco2e"),
            breakdown=ComponentBreakdown(fractions),
            battery=battery_spec,
            reused=base.boolean("reused", False),
            note=base.text("note", ""),
        )
    except RegistryError:
        raise
    except InputError as exc:
        raise RegistryError(f"[{section}] {exc}") from None


def load_registry(path: str) -> Registry:
    """Load and validate a registry file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise RegistryError(f"cannot read registry '{path}': {exc}") from None
    return parse_registry(text, source=str(path))


def default_registry() -> Registry:
    """The registry bundled with the package."""
    text = resources.files("jcci.data").joinpath("default_registry.ini").read_text(encoding="utf-8")
    return parse_registry(text, source="<bundled default>")


def _fmt(value: float) -> str:
    return repr(value)


def serialize_registry(registry: Registry) -> str:
    """Render a Registry back to registry text.

    Round-trips: parse_registry(serialize_registry(r)) compares equal
    to r (section order preserved, floats written exactly).
    """
    lines: list[str] = []

    def emit(section: str, pairs: list[tuple[str, str]]) -> None:
        lines.append(f"[{section}]")
        for key, value in pairs:
            lines.append(f"{key} = {value}")
        lines.append("")

    for name, profile in registry.load_profiles.items():
        emit(
            f"load_profile.{name}",
            [(f"load_{load:g}", _fmt(tf)) for load, tf in profile.levels],
        )
    for name, device in registry.devices.items():
        pairs = [
            ("release_year", str(device.release_year)),
            ("p100_w", _fmt(device.power.p100)),
            ("p50_w", _fmt(device.power.p50)),
            ("p10_w", _fmt(device.power.p10)),
            ("p_idle_w", _fmt(device.power.p_idle)),
            ("embodied_kgco2e", _fmt(device.embodied_carbon_total)),
            ("reused", "true" if device.reused else "false"),
        ]
        if device.note:
            pairs.append(("note", device.note))
        emit(f"device.{name}", pairs)
        if device.battery is not None:
            battery = device.battery
            derived = battery.capacity_ah * 3600.0 * battery.nominal_voltage
            pairs = [
                ("capacity_ah", _fmt(battery.capacity_ah)),
                ("nominal_voltage_v", _fmt(battery.nominal_voltage)),
                ("charge_power_w", _fmt(battery.charge_power)),
                ("cycle_limit", _fmt(battery.cycle_limit)),
                ("embodied_kgco2e", _fmt(battery.embodied_carbon)),
            ]
            if battery.usable_energy != derived:
                pairs.append(("usable_energy_j", _fmt(battery.usable_energy)))
            emit(f"device.{name}.battery", pairs)
        emit(
            f"device.{name}.breakdown",
            [(category, _fmt(fraction)) for category, fraction in device.breakdown.fractions.items()],
        )
        for bench in device.benchmarks:
            pairs = [
                ("unit", bench.unit),
                ("single", _fmt(bench.single)),
                ("multi", _fmt(bench.multi)),
            ]
            if bench.published_n is not None:
                pairs.append(("published_n", str(bench.published_n)))
            emit(f"device.{name}.benchmark.{bench.name}", pairs)
    for name, peripheral in registry.peripherals.items():
        pairs = [
            ("embodied_kgco2e", _fmt(peripheral.embodied_carbon)),
            ("active_power_w", _fmt(peripheral.active_power)),
        ]
        if peripheral.rating is not None:
            pairs.append(("rating_w", _fmt(peripheral.rating)))
        if peripheral.note:
            pairs.append(("note", peripheral.note))
        emit(f"peripheral.{name}", pairs)

    return "\n".join(lines)
