"""Sizing and carbon accounting for clusters, datacenters, and rivals.

A cluster design replaces one baseline device with N reused devices
plus the support hardware that keeps them alive: metering plugs for
charge scheduling, fans for airflow, replacement batteries over the
deployment lifetime. N comes from matching all-core benchmark
throughput; a management fraction reserves devices that draw power and
carry embodied carbon but deliver no operations.

Datacenter accounting scales a unit design by a unit count and wraps
the operational terms in a PUE built from cooling and lighting
overheads. Query scenarios compare a cluster against a rented rival
machine on measured application throughput.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from importlib import resources

from . import registry as registry_mod
from .carbon import (
    CarbonBreakdown,
    CCIResult,
    NetworkLoadSpec,
    battery_replacement_carbon,
    compute_carbon,
    network_carbon,
)
from .errors import InputError, ModelError, RegistryError
from .registry import BenchmarkSpec, DeviceProfile, LoadProfile, Peripheral, Registry, avg_ops_rate, avg_power
from .units import SECONDS_PER_HOUR, SECONDS_PER_MONTH, kwh

# Network defaults: each deployment serves a tenth of a gigabit per
# second. Wired designs ride existing infrastructure priced at a
# WiFi-class energy intensity; tree designs funnel traffic over a
# cellular hotspot uplink, which costs more per byte.
F_NET_DEFAULT = 0.1e9 / 8.0  # bytes/s
EI_WIRED = 5e-6  # J/byte
EI_TREE = 11e-6  # J/byte

# A shared access point splits its nominal bandwidth across the devices
# that chat through it; the divisor is calibrated from a measured
# per-device share of about 18.5 Mbit/s on a 150 Mbit/s link.
WIFI_BANDWIDTH_DEFAULT = 150e6  # bit/s
BANDWIDTH_SHARING_FACTOR = 150.0 / 18.5

TOPOLOGIES = ("wired", "tree")
REGIMES = ("ca", "solar", "zero")

# Datacenter overhead defaults. The cooling overhead is calibrated once
# (see calibrate_cooling_overhead) so the reference rack-server hall
# lands on PUE 1.31 with the other defaults frozen, then frozen itself.
FLOOR_AREA_1U = 0.046  # m^2 per rack unit, aisles included
LIGHTING_DENSITY_DEFAULT = 6.0  # W/m^2
SPACE_COOLING_DEFAULT = 5.0  # W/m^2
COOLING_OVERHEAD_DEFAULT = 0.30836  # fraction of IT power


@dataclass(frozen=True)
class ClusterDesign:
    name: str
    device: DeviceProfile
    n_devices: int
    mgmt_fraction: float = 0.0
    peripherals: tuple[tuple[Peripheral, int], ...] = ()
    topology: str = "wired"
    smart_charging_savings: float = 0.0
    baseline_device: DeviceProfile | None = None
    baseline_benchmark: str | None = None
    net: NetworkLoadSpec | None = None  # None: derived from topology
    replace_batteries: bool = True
    note: str = ""

    def __post_init__(self) -> None:
        if self.n_devices < 1:
            raise InputError(f"design {self.name}: n_devices must be >= 1, got {self.n_devices}")
        if not (0.0 <= self.mgmt_fraction < 1.0):
            raise InputError(f"design {self.name}: mgmt_fraction {self.mgmt_fraction} outside [0, 1)")
        if self.topology not in TOPOLOGIES:
            raise InputError(
                f"design {self.name}: topology must be one of {TOPOLOGIES}, got '{self.topology}'"
            )
        if not (0.0 <= self.smart_charging_savings < 1.0):
            raise InputError(
                f"design {self.name}: smart_charging_savings {self.smart_charging_savings} outside [0, 1)"
            )
        for peripheral, count in self.peripherals:
            if count < 0:
                raise InputError(f"design {self.name}: peripheral {peripheral.name} count must be >= 0")

    @property
    def network(self) -> NetworkLoadSpec:
        if self.net is not None:
            return self.net
        ei = EI_TREE if self.topology == "tree" else EI_WIRED
        return NetworkLoadSpec(f_net=F_NET_DEFAULT, ei_net=ei)


@dataclass(frozen=True)
class DatacenterDesign:
    name: str
    unit: ClusterDesign
    unit_count: int
    floor_area_per_unit: float  # m^2
    lighting_power_density: float = LIGHTING_DENSITY_DEFAULT  # W/m^2
    cooling_overhead: float = COOLING_OVERHEAD_DEFAULT  # fraction of IT power
    space_overhead_cooling: float = SPACE_COOLING_DEFAULT  # W/m^2

    def __post_init__(self) -> None:
        if self.unit_count < 1:
            raise InputError(f"datacenter {self.name}: unit_count must be >= 1")
        if self.floor_area_per_unit <= 0:
            raise InputError(f"datacenter {self.name}: floor_area_per_unit must be > 0 m^2")
        if self.lighting_power_density < 0 or self.space_overhead_cooling < 0:
            raise InputError(f"datacenter {self.name}: area power densities must be >= 0")
        if self.cooling_overhead < 0:
            raise InputError(f"datacenter {self.name}: cooling_overhead must be >= 0")


@dataclass(frozen=True)
class QueryScenario:
    """A cluster and a rival machine serving the same application."""

    name: str
    cluster_throughput: float  # queries/s
    rival_throughput: float  # queries/s
    cluster_power: float  # W, devices only
    rival_power: float  # W
    rival_embodied: float  # kg
    lifetime: float  # s
    ci: float  # gCO2e/kWh

    def __post_init__(self) -> None:
        if self.cluster_throughput <= 0 or self.rival_throughput <= 0:
            raise InputError(f"scenario {self.name}: throughputs must be > 0 queries/s")
        if self.cluster_power < 0 or self.rival_power < 0:
            raise InputError(f"scenario {self.name}: powers must be >= 0 W")
        if self.rival_embodied < 0:
            raise InputError(f"scenario {self.name}: rival_embodied must be >= 0 kg")
        if self.lifetime <= 0:
            raise InputError(f"scenario {self.name}: lifetime must be > 0 s")
        if self.ci < 0:
            raise InputError(f"scenario {self.name}: ci must be >= 0")


@dataclass(frozen=True)
class DatacenterCCI:
    c_m: float
    c_c: float
    c_n: float
    pue: float
    total_ops: float
    cci: float  # kg per benchmark unit

    @property
    def cci_mg(self) -> float:
        return self.cci * 1e6


def size_cluster(baseline: BenchmarkSpec, device: BenchmarkSpec) -> int:
    """Devices needed to match the baseline's all-core throughput, whole devices."""
    if baseline.unit != device.unit:
        raise InputError(
            f"cannot size across units: baseline reports {baseline.unit}, device reports {device.unit}"
        )
    return math.ceil(baseline.multi / device.multi)


def sizing_table(
    registry: Registry, baseline_name: str = "poweredge_r740"
) -> list[dict[str, object]]:
    """Equivalent-cluster sizes for every device and benchmark.

    Each row carries the computed ceiling-rule size, any published
    size stored in the registry, and a provenance marker that flags
    disagreements.
    """
    baseline = registry.device(baseline_name)
    rows: list[dict[str, object]] = []
    for device_name, device in registry.devices.items():
        for bench in device.benchmarks:
            try:
                base_bench = baseline.benchmark(bench.name)
            except InputError:
                continue
            computed = size_cluster(base_bench, bench)
            if bench.published_n is None or bench.published_n == computed:
                provenance = "computed"
            else:
                provenance = "published-override"
            rows.append(
                {
                    "device": device_name,
                    "benchmark": bench.name,
                    "unit": bench.unit,
                    "computed_n": computed,
                    "published_n": bench.published_n,
                    "provenance": provenance,
                }
            )
    return rows


def tree_bandwidth(
    wifi_bandwidth: float = WIFI_BANDWIDTH_DEFAULT,
    sharing_factor: float = BANDWIDTH_SHARING_FACTOR,
) -> float:
    """Per-device bandwidth on a shared access point, in bit/s."""
    if wifi_bandwidth <= 0:
        raise InputError(f"wifi_bandwidth must be > 0 bit/s, got {wifi_bandwidth}")
    if sharing_factor <= 0:
        raise InputError(f"sharing_factor must be > 0, got {sharing_factor}")
    return wifi_bandwidth / sharing_factor


def peripheral_power(design: ClusterDesign) -> float:
    return sum(peripheral.active_power * count for peripheral, count in design.peripherals)


def peripheral_embodied(design: ClusterDesign) -> float:
    return sum(peripheral.embodied_carbon * count for peripheral, count in design.peripherals)


def physical_power(design: ClusterDesign, load: LoadProfile) -> float:
    """Wall power of the whole deployment in watts.

    Charge scheduling shifts when energy is drawn, not how much, so it
    does not appear here.
    """
    return design.n_devices * avg_power(design.device.power, load) + peripheral_power(design)


def cluster_embodied(design: ClusterDesign, lifetime_s: float, load: LoadProfile) -> float:
    """Manufacturing carbon charged to the cluster over a deployment, in kg.

    Reused devices arrive free and pay only for replacement batteries;
    new devices pay their full embodied total. Peripherals always count.
    """
    device = design.device
    total = peripheral_embodied(design)
    if device.reused:
        if device.battery is not None and design.replace_batteries:
            per_device = battery_replacement_carbon(
                device.battery, avg_power(device.power, load), lifetime_s
            )
            total += design.n_devices * per_device
    else:
        total += design.n_devices * device.embodied_carbon_total
    return total


def cluster_compute_carbon(
    design: ClusterDesign, load: LoadProfile, lifetime_s: float, ci_g_per_kwh: float
) -> float:
    """Operational carbon in kg, with charge-scheduling savings folded in.

    Scheduling charges at cleaner hours, which at a fixed mean intensity
    is equivalent to derating the devices' carbon-effective power by the
    savings fraction. Peripherals draw continuously and get no savings.
    """
    effective = design.n_devices * avg_power(design.device.power, load) * (
        1.0 - design.smart_charging_savings
    ) + peripheral_power(design)
    return compute_carbon(effective, lifetime_s, ci_g_per_kwh)


def cluster_cci(
    design: ClusterDesign,
    load: LoadProfile,
    bench_name: str,
    lifetimes_s: list[float],
    ci_g_per_kwh: float,
) -> list[CCIResult]:
    """CCI of the cluster at each lifetime in the grid.

    Only non-management devices deliver operations; every device draws
    power and consumes batteries.
    """
    bench = design.device.benchmark(bench_name)
    ops_rate = (1.0 - design.mgmt_fraction) * design.n_devices * avg_ops_rate(bench, load)
    results = []
    for lifetime_s in lifetimes_s:
        ops = ops_rate * lifetime_s
        if ops <= 0:
            raise ModelError(
                f"undefined CCI: design {design.name} delivers zero operations at lifetime {lifetime_s}s"
            )
        breakdown = CarbonBreakdown(
            c_m=cluster_embodied(design, lifetime_s, load),
            c_c=cluster_compute_carbon(design, load, lifetime_s, ci_g_per_kwh),
            c_n=network_carbon(design.network, lifetime_s, ci_g_per_kwh),
        )
        results.append(CCIResult.build(breakdown, lifetime_s, ops))
    return results


def apply_regime(design: ClusterDesign, regime: str) -> tuple[ClusterDesign, float]:
    """Specialize a design for a power-sourcing regime and return (design, ci).

    ca: the as-designed cluster on the California grid average.
    solar: dedicated solar power around the clock; charge scheduling,
        metering plugs, and battery replacement all become pointless and
        are removed.
    zero: hypothetical carbon-free grid; the design is unchanged, only
        the intensity drops to zero.
    """
    if regime == "ca":
        return design, 257.0
    if regime == "solar":
        stripped = replace(
            design,
            smart_charging_savings=0.0,
            replace_batteries=False,
            peripherals=tuple(
                (peripheral, count)
                for peripheral, count in design.peripherals
                if peripheral.name != "smartplug"
            ),
        )
        return stripped, 48.0
    if regime == "zero":
        return design, 0.0
    raise InputError(f"unknown regime '{regime}' (expected one of {REGIMES})")


def pue(dc: DatacenterDesign, load: LoadProfile) -> float:
    """Power usage effectiveness of the hall: total draw over IT draw."""
    p_it = dc.unit_count * physical_power(dc.unit, load)
    if p_it <= 0:
        raise ModelError(f"datacenter {dc.name}: IT power is zero, PUE undefined")
    area = dc.unit_count * dc.floor_area_per_unit
    p_cooling = dc.cooling_overhead * p_it + dc.space_overhead_cooling * area
    p_lighting = dc.lighting_power_density * area
    return (p_it + p_cooling + p_lighting) / p_it


def calibrate_cooling_overhead(
    dc: DatacenterDesign, load: LoadProfile, target_pue: float
) -> float:
    """Solve the IT-proportional cooling overhead that hits a target PUE.

    Used once against the reference hall to produce the frozen default;
    the area-proportional terms stay at their defaults.
    """
    if target_pue <= 1.0:
        raise InputError(f"target PUE must exceed 1.0, got {target_pue}")
    p_it = dc.unit_count * physical_power(dc.unit, load)
    if p_it <= 0:
        raise ModelError(f"datacenter {dc.name}: IT power is zero")
    area = dc.unit_count * dc.floor_area_per_unit
    area_term = (dc.space_overhead_cooling + dc.lighting_power_density) * area / p_it
    overhead = target_pue - 1.0 - area_term
    if overhead < 0:
        raise ModelError(
            f"datacenter {dc.name}: area overheads alone exceed the target PUE {target_pue}"
        )
    return overhead


def datacenter_cci(
    dc: DatacenterDesign,
    load: LoadProfile,
    bench_name: str,
    lifetime_s: float,
    ci_g_per_kwh: float,
) -> DatacenterCCI:
    """Datacenter CCI: embodied plus PUE-inflated operational carbon per op."""
    unit = dc.unit
    bench = unit.device.benchmark(bench_name)
    ops = (
        (1.0 - unit.mgmt_fraction)
        * unit.n_devices
        * avg_ops_rate(bench, load)
        * lifetime_s
        * dc.unit_count
    )
    if ops <= 0:
        raise ModelError(f"undefined CCI: datacenter {dc.name} delivers zero operations")
    hall_pue = pue(dc, load)
    c_m = cluster_embodied(unit, lifetime_s, load) * dc.unit_count
    c_c = cluster_compute_carbon(unit, load, lifetime_s, ci_g_per_kwh) * dc.unit_count
    c_n = network_carbon(unit.network, lifetime_s, ci_g_per_kwh) * dc.unit_count
    cci = (c_m + hall_pue * (c_c + c_n)) / ops
    return DatacenterCCI(c_m=c_m, c_c=c_c, c_n=c_n, pue=hall_pue, total_ops=ops, cci=cci)


def _query_side_carbon(scenario: QueryScenario, cluster: ClusterDesign, savings: float) -> float:
    """Lifetime carbon of the cluster side of a query scenario, in kg."""
    device = cluster.device
    embodied = peripheral_embodied(cluster)
    if device.battery is not None and cluster.replace_batteries:
        per_device_power = scenario.cluster_power / cluster.n_devices
        embodied += cluster.n_devices * battery_replacement_carbon(
            device.battery, per_device_power, scenario.lifetime
        )
    if not device.reused:
        embodied += cluster.n_devices * device.embodied_carbon_total
    operational_power = scenario.cluster_power * (1.0 - savings) + peripheral_power(cluster)
    return embodied + compute_carbon(operational_power, scenario.lifetime, scenario.ci)


def query_carbon_comparison(
    scenario: QueryScenario, cluster: ClusterDesign, apply_savings: bool = True
) -> float:
    """How many times more carbon the rival emits per query than the cluster.

    Both sides are priced over the scenario lifetime at the scenario
    intensity using their measured application throughputs. Pass
    apply_savings=False to price the cluster without charge-scheduling
    savings; both variants belong in reports.
    """
    savings = cluster.smart_charging_savings if apply_savings else 0.0
    cluster_carbon = _query_side_carbon(scenario, cluster, savings)
    rival_carbon = scenario.rival_embodied + compute_carbon(
        scenario.rival_power, scenario.lifetime, scenario.ci
    )
    cluster_per_query = cluster_carbon / (scenario.cluster_throughput * scenario.lifetime)
    rival_per_query = rival_carbon / (scenario.rival_throughput * scenario.lifetime)
    if cluster_per_query <= 0:
        raise ModelError(f"scenario {scenario.name}: cluster emits no carbon, ratio undefined")
    return rival_per_query / cluster_per_query


def deployment_cost(
    design: ClusterDesign,
    load: LoadProfile,
    unit_price: float,
    energy_price_per_kwh: float,
    lifetime_s: float,
) -> float:
    """Hardware plus wall-energy cost of owning the cluster."""
    if unit_price < 0 or energy_price_per_kwh < 0:
        raise InputError("prices must be >= 0")
    if lifetime_s < 0:
        raise InputError("lifetime must be >= 0 s")
    energy = kwh(physical_power(design, load) * lifetime_s)
    return design.n_devices * unit_price + energy * energy_price_per_kwh


def rental_cost(hourly_rate: float, lifetime_s: float) -> float:
    """Cost of renting a machine for the deployment lifetime."""
    if hourly_rate < 0:
        raise InputError("hourly rate must be >= 0")
    if lifetime_s < 0:
        raise InputError("lifetime must be >= 0 s")
    return hourly_rate * lifetime_s / SECONDS_PER_HOUR


@dataclass(frozen=True)
class DesignBook:
    """Cluster designs, datacenter designs, and query scenarios from one file."""

    designs: dict[str, ClusterDesign] = field(default_factory=dict)
    datacenters: dict[str, DatacenterDesign] = field(default_factory=dict)
    query_scenarios: dict[str, tuple[QueryScenario, str]] = field(default_factory=dict)
    source: str = field(default="", compare=False)

    def design(self, name: str) -> ClusterDesign:
        try:
            return self.designs[name]
        except KeyError:
            raise RegistryError(f"unknown design '{name}' (source: {self.source or 'in-memory'})") from None

    def datacenter(self, name: str) -> DatacenterDesign:
        try:
            return self.datacenters[name]
        except KeyError:
            raise RegistryError(
                f"unknown datacenter '{name}' (source: {self.source or 'in-memory'})"
            ) from None

    def query_scenario(self, name: str) -> tuple[QueryScenario, str]:
        """Returns (scenario, design name of the cluster side)."""
        try:
            return self.query_scenarios[name]
        except KeyError:
            raise RegistryError(
                f"unknown query scenario '{name}' (source: {self.source or 'in-memory'})"
            ) from None


def parse_designs(text: str, registry: Registry, source: str = "<string>") -> DesignBook:
    """Parse a design file (same INI dialect as the registry)."""
    sections = registry_mod._read_sections(text, source)
    if not sections:
        raise RegistryError(f"{source}: no records")
    designs: dict[str, ClusterDesign] = {}
    datacenters: dict[str, DatacenterDesign] = {}
    query_scenarios: dict[str, tuple[QueryScenario, str]] = {}

    design_sections = {}
    dc_sections = {}
    query_sections = {}
    for section, values in sections.items():
        parts = section.split(".")
        reader = registry_mod._SectionReader(section, values)
        if parts[0] == "design" and len(parts) == 2:
            design_sections[parts[1]] = reader
        elif parts[0] == "datacenter" and len(parts) == 2:
            dc_sections[parts[1]] = reader
        elif parts[0] == "query_scenario" and len(parts) == 2:
            query_sections[parts[1]] = reader
        else:
            raise RegistryError(f"{source}: unrecognized section [{section}]")

    for name, reader in design_sections.items():
        peripherals = []
        for key in reader.values:
            if key.startswith("peripheral."):
                peripheral = registry.peripheral(key[len("peripheral."):])
                peripherals.append((peripheral, reader.integer(key)))
        baseline_name = reader.text("baseline_device", "")
        f_net = reader.optional_number("f_net_bytes_per_s")
        ei_net = reader.optional_number("ei_net_j_per_byte")
        net = None
        if f_net is not None or ei_net is not None:
            topology = reader.text("topology", "wired")
            default_ei = EI_TREE if topology == "tree" else EI_WIRED
            net = NetworkLoadSpec(
                f_net=f_net if f_net is not None else F_NET_DEFAULT,
                ei_net=ei_net if ei_net is not None else default_ei,
            )
        try:
            designs[name] = ClusterDesign(
                name=name,
                device=registry.device(reader.text("device")),
                n_devices=reader.integer("n_devices"),
                mgmt_fraction=reader.number("mgmt_fraction", 0.0),
                peripherals=tuple(peripherals),
                topology=reader.text("topology", "wired"),
                smart_charging_savings=reader.number("smart_charging_savings", 0.0),
                baseline_device=registry.device(baseline_name) if baseline_name else None,
                baseline_benchmark=reader.text("baseline_benchmark", "") or None,
                net=net,
                replace_batteries=reader.boolean("replace_batteries", True),
                note=reader.text("note", ""),
            )
        except InputError as exc:
            raise RegistryError(f"[{reader.section}] {exc}") from None

    for name, reader in dc_sections.items():
        unit_name = reader.text("design")
        if unit_name not in designs:
            raise RegistryError(f"[{reader.section}] references unknown design '{unit_name}'")
        try:
            datacenters[name] = DatacenterDesign(
                name=name,
                unit=designs[unit_name],
                unit_count=reader.integer("unit_count"),
                floor_area_per_unit=reader.number("floor_area_per_unit_m2"),
                lighting_power_density=reader.number("lighting_w_per_m2", LIGHTING_DENSITY_DEFAULT),
                cooling_overhead=reader.number("cooling_overhead_fraction", COOLING_OVERHEAD_DEFAULT),
                space_overhead_cooling=reader.number("space_cooling_w_per_m2", SPACE_COOLING_DEFAULT),
            )
        except InputError as exc:
            raise RegistryError(f"[{reader.section}] {exc}") from None

    for name, reader in query_sections.items():
        design_name = reader.text("design")
        if design_name not in designs:
            raise RegistryError(f"[{reader.section}] references unknown design '{design_name}'")
        try:
            scenario = QueryScenario(
                name=name,
                cluster_throughput=reader.number("cluster_qps"),
                rival_throughput=reader.number("rival_qps"),
                cluster_power=reader.number("cluster_power_w"),
                rival_power=reader.number("rival_power_w"),
                rival_embodied=reader.number("rival_embodied_kgco2e"),
                lifetime=reader.number("lifetime_months") * SECONDS_PER_MONTH,
                ci=reader.number("ci_gco2e_kwh"),
            )
        except InputError as exc:
            raise RegistryError(f"[{reader.section}] {exc}") from None
        query_scenarios[name] = (scenario, design_name)

    return DesignBook(
        designs=designs, datacenters=datacenters, query_scenarios=query_scenarios, source=source
    )


def load_designs(path: str, registry: Registry) -> DesignBook:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise RegistryError(f"cannot read designs '{path}': {exc}") from None
    return parse_designs(text, registry, source=str(path))


def default_designs(registry: Registry) -> DesignBook:
    """The cluster, datacenter, and query designs bundled with the package."""
    text = resources.files("jcci.data").joinpath("default_designs.ini").read_text(encoding="utf-8")
    return parse_designs(text, registry, source="<bundled default>")
