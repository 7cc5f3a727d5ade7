import pytest
from pytest import approx

from jcci.errors import InputError, RegistryError
from jcci.registry import (
    BatterySpec,
    BenchmarkSpec,
    ComponentBreakdown,
    PowerProfile,
    avg_ops_rate,
    avg_power,
    parse_registry,
    serialize_registry,
)

# Published light-medium average draw per device, watts.
PUBLISHED_AVG_POWER = {
    "poweredge_r740": 308.7,
    "proliant_dl380_g6": 199.1,
    "thinkpad_x1_g3": 11.47,
    "pixel_3a": 1.54,  # rounded in print; computed value is 1.535
    "nexus_4": 1.78,
}


def test_avg_power_reproduces_published_values(registry, load):
    for name, published in PUBLISHED_AVG_POWER.items():
        computed = avg_power(registry.device(name).power, load)
        assert computed == approx(published, rel=0.005), name


def test_avg_power_is_time_weighted_sum(registry, load):
    power = registry.device("pixel_3a").power
    expected = 0.10 * 2.5 + 0.35 * 1.9 + 0.30 * 1.4 + 0.25 * 0.8
    assert avg_power(power, load) == approx(expected)


def test_avg_ops_rate_scales_multi_core_throughput(registry, load):
    bench = registry.device("pixel_3a").benchmark("sgemm")
    # time-at-load weights: 0.10*1.0 + 0.35*0.5 + 0.30*0.1 = 0.305
    assert avg_ops_rate(bench, load) == approx(39.0 * 0.305)


def test_power_interpolation_between_set_points():
    power = PowerProfile(p100=100.0, p50=60.0, p10=20.0, p_idle=10.0)
    assert power.at(0.0) == 10.0
    assert power.at(1.0) == 100.0
    assert power.at(0.05) == approx(15.0)  # halfway from idle to p10
    assert power.at(0.3) == approx(40.0)  # halfway from p10 to p50
    assert power.at(0.75) == approx(80.0)  # halfway from p50 to p100
    with pytest.raises(InputError):
        power.at(1.2)


def test_power_profile_rejects_non_monotonic_points():
    with pytest.raises(InputError):
        PowerProfile(p100=100.0, p50=110.0, p10=20.0, p_idle=10.0)


def test_battery_usable_energy_derived_from_nameplate(registry):
    nexus = registry.device("nexus_4").battery
    assert nexus.usable_energy == approx(2.1 * 3600 * 3.8)  # 28728 J
    # The pixel entry overrides the nameplate with a measured value.
    pixel = registry.device("pixel_3a").battery
    assert pixel.usable_energy == 45_000.0


def test_battery_spec_validation():
    with pytest.raises(InputError):
        BatterySpec(capacity_ah=0.0, nominal_voltage=3.8, charge_power=6.0,
                    cycle_limit=2500, embodied_carbon=1.0)
    with pytest.raises(InputError):
        BatterySpec(capacity_ah=2.1, nominal_voltage=3.8, charge_power=6.0,
                    cycle_limit=0, embodied_carbon=1.0)


def test_benchmark_spec_requires_multi_at_least_single():
    with pytest.raises(InputError):
        BenchmarkSpec(name="sgemm", unit="Gflops", single=10.0, multi=9.0)


def test_breakdown_fractions_must_sum_to_one():
    with pytest.raises(InputError):
        ComponentBreakdown({"compute": 0.5, "other": 0.4})
    with pytest.raises(InputError):
        ComponentBreakdown({"compute": 0.5, "engine": 0.5})  # not a component category
    good = ComponentBreakdown({"compute": 0.6, "other": 0.4})
    assert good.fraction("compute") == 0.6
    assert good.fraction("display") == 0.0


def test_registry_lookups_name_the_missing_entry(registry):
    with pytest.raises(RegistryError, match="unknown device 'toaster'"):
        registry.device("toaster")
    with pytest.raises(RegistryError, match="unknown peripheral"):
        registry.peripheral("gpu")
    with pytest.raises(RegistryError, match="unknown load profile"):
        registry.load_profile("flat_out")


def test_default_registry_contents(registry):
    assert sorted(registry.devices) == [
        "nexus_4", "pixel_3a", "poweredge_r740", "proliant_dl380_g6", "thinkpad_x1_g3",
    ]
    assert sorted(registry.peripherals) == ["server_fan", "smartplug"]
    for device in registry.devices.values():
        assert {b.name for b in device.benchmarks} == {
            "sgemm", "pdf_render", "dijkstra", "memory_copy",
        }
    # Reuse flags: only the baseline server is bought new.
    assert not registry.device("poweredge_r740").reused
    assert registry.device("pixel_3a").reused


def test_serialize_parse_round_trip(registry):
    text = serialize_registry(registry)
    again = parse_registry(text, source="round-trip")
    assert again == registry


MINIMAL = """
[load_profile.flat]
load_1.0 = 1.0

[device.widget]
release_year = 2020
p100_w = 4
p50_w = 3
p10_w = 2
p_idle_w = 1
embodied_kgco2e = 10
reused = true

[device.widget.breakdown]
compute = 1.0

[device.widget.benchmark.spin]
unit = spins/sec
single = 1.0
multi = 2.0
"""


def test_parse_minimal_registry():
    registry = parse_registry(MINIMAL)
    widget = registry.device("widget")
    assert widget.benchmark("spin").multi == 2.0
    assert widget.battery is None
    assert registry.load_profile("flat").levels == ((1.0, 1.0),)


def test_parse_reports_missing_field_with_section():
    broken = MINIMAL.replace("p50_w = 3\n", "")
    with pytest.raises(RegistryError, match=r"\[device.widget\] missing required field 'p50_w'"):
        parse_registry(broken)


def test_parse_rejects_subsection_without_device():
    orphan = MINIMAL + "\n[device.ghost.battery]\ncapacity_ah = 1\n"
    with pytest.raises(RegistryError, match="ghost"):
        parse_registry(orphan)


def test_device_rejects_duplicate_benchmark(registry):
    widget = parse_registry(MINIMAL).device("widget")
    from dataclasses import replace

    with pytest.raises(InputError, match="duplicate benchmark 'spin'"):
        replace(widget, benchmarks=widget.benchmarks * 2)


def test_parse_rejects_empty_input():
    with pytest.raises(RegistryError, match="no records"):
        parse_registry("")


def test_parse_rejects_bad_number():
    broken = MINIMAL.replace("p100_w = 4", "p100_w = four")
    with pytest.raises(RegistryError, match="invalid number"):
        parse_registry(broken)
