"""Carbon accounting for compute built from reused devices.

The package models the lifetime carbon of running workloads on
repurposed hardware (old phones, laptops, servers) against buying new:
per-operation carbon intensity, carbon-aware charge scheduling over
grid traces, battery wear, enclosure thermals, cluster and datacenter
sizing, and per-query comparisons, with a CLI that writes the results
as CSV tables and SVG charts.
"""
from .carbon import (
    CarbonBreakdown,
    CCIResult,
    LifeTotals,
    NetworkLoadSpec,
    battery_lifetime_days,
    battery_replacement_carbon,
    cci_single,
    cci_two_life,
    compute_carbon,
    embodied_carbon,
    network_carbon,
    reuse_factor,
)
from .charging import (
    ChargePolicy,
    ChargeSimResult,
    backup_runtime,
    required_duty,
    simulate,
)
from .cluster import (
    ClusterDesign,
    DatacenterDesign,
    DesignBook,
    QueryScenario,
    apply_regime,
    calibrate_cooling_overhead,
    cluster_cci,
    datacenter_cci,
    default_designs,
    deployment_cost,
    load_designs,
    parse_designs,
    pue,
    query_carbon_comparison,
    rental_cost,
    size_cluster,
    sizing_table,
)
from .errors import InputError, JCCIError, ModelError, RegistryError, TraceError
from .grid import (
    STANDARD_MIXES,
    EnergyMix,
    GridTrace,
    import_caiso,
    mean_intensity,
    mix_intensity,
    parse_trace,
    percentile_threshold,
    serialize_trace,
    synthetic_trace,
    write_trace,
)
from .registry import (
    BatterySpec,
    BenchmarkSpec,
    ComponentBreakdown,
    DeviceProfile,
    LoadProfile,
    Peripheral,
    PowerProfile,
    Registry,
    avg_ops_rate,
    avg_power,
    default_registry,
    load_registry,
    parse_registry,
    serialize_registry,
)
from .scenarios import (
    ReportBundle,
    Scenario,
    Step,
    bundled_scenario,
    list_scenarios,
    run_scenario,
)
from .svg import ChartSpec, Series, emit_chart
from .thermal import (
    BoxConfig,
    ThermalParams,
    ThermalSample,
    max_stable_dt,
    parse_box_config,
    provision_fans,
    simulate_box,
    thermal_power,
)

__version__ = "0.1.0"

__all__ = [
    "BatterySpec",
    "BenchmarkSpec",
    "BoxConfig",
    "CCIResult",
    "CarbonBreakdown",
    "ChargePolicy",
    "ChargeSimResult",
    "ChartSpec",
    "ClusterDesign",
    "ComponentBreakdown",
    "DatacenterDesign",
    "DesignBook",
    "DeviceProfile",
    "EnergyMix",
    "GridTrace",
    "InputError",
    "JCCIError",
    "LifeTotals",
    "LoadProfile",
    "ModelError",
    "NetworkLoadSpec",
    "Peripheral",
    "PowerProfile",
    "QueryScenario",
    "Registry",
    "RegistryError",
    "ReportBundle",
    "STANDARD_MIXES",
    "Scenario",
    "Series",
    "Step",
    "ThermalParams",
    "ThermalSample",
    "TraceError",
    "apply_regime",
    "avg_ops_rate",
    "avg_power",
    "backup_runtime",
    "battery_lifetime_days",
    "battery_replacement_carbon",
    "bundled_scenario",
    "calibrate_cooling_overhead",
    "cci_single",
    "cci_two_life",
    "cluster_cci",
    "compute_carbon",
    "datacenter_cci",
    "default_designs",
    "default_registry",
    "deployment_cost",
    "embodied_carbon",
    "emit_chart",
    "import_caiso",
    "list_scenarios",
    "load_designs",
    "load_registry",
    "max_stable_dt",
    "mean_intensity",
    "mix_intensity",
    "network_carbon",
    "parse_box_config",
    "parse_designs",
    "parse_registry",
    "parse_trace",
    "percentile_threshold",
    "provision_fans",
    "pue",
    "query_carbon_comparison",
    "rental_cost",
    "required_duty",
    "reuse_factor",
    "run_scenario",
    "serialize_registry",
    "serialize_trace",
    "simulate",
    "simulate_box",
    "size_cluster",
    "sizing_table",
    "synthetic_trace",
    "thermal_power",
    "write_trace",
]
