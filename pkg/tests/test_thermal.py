import math

import pytest
from pytest import approx

from jcci.errors import InputError, ModelError
from jcci.thermal import (
    BOX_AIR_MASS_DEFAULT,
    ThermalParams,
    ThermalSample,
    max_stable_dt,
    parse_box_config,
    provision_fans,
    simulate_box,
    thermal_power,
)

FIVE_PHONES = ThermalParams(
    air_mass=BOX_AIR_MASS_DEFAULT,
    device_masses=(0.139, 0.139, 0.139, 0.139, 0.33),
)


def test_thermal_power_from_measured_warming():
    # ten minutes of warming measured off a packed box: four phones plus
    # one tablet-class device, air 25 -> 36 C
    start = ThermalSample(0.0, 25.0, (25.0,) * 5)
    end = ThermalSample(600.0, 36.0, (52.0, 48.5, 50.0, 49.0, 41.0))
    watts = thermal_power(FIVE_PHONES, start, end)
    assert watts == approx(22.740425000000002, rel=1e-12)


def test_thermal_power_input_checks():
    start = ThermalSample(0.0, 25.0, (25.0,) * 5)
    short = ThermalSample(600.0, 30.0, (40.0, 40.0))
    with pytest.raises(InputError, match="device temps"):
        thermal_power(FIVE_PHONES, start, short)
    same_time = ThermalSample(0.0, 30.0, (40.0,) * 5)
    with pytest.raises(ModelError, match="elapsed"):
        thermal_power(FIVE_PHONES, start, same_time)


def test_provision_fans():
    assert provision_fans(666.0, 500.0) == 2
    assert provision_fans(135.0, 500.0) == 1
    assert provision_fans(500.0, 500.0) == 1
    assert provision_fans(0.0, 500.0) == 0
    with pytest.raises(InputError):
        provision_fans(100.0, 0.0)
    with pytest.raises(InputError):
        provision_fans(-1.0, 500.0)


def test_stability_limit():
    # air node dominates: c_air*m_air / (5 * G) times the safety margin
    limit = max_stable_dt(FIVE_PHONES)
    assert limit == approx(0.1 * 1005.0 * 0.0155 / (5 * 0.035))
    with pytest.raises(ModelError, match="unstable"):
        simulate_box(FIVE_PHONES, (2.6,) * 5, duration=60.0, dt=limit * 2)
    isolated = ThermalParams(air_mass=1.0, device_masses=(1.0,),
                             device_air_conductance=0.0)
    assert max_stable_dt(isolated) == math.inf


def test_sealed_box_conserves_energy():
    result = simulate_box(FIVE_PHONES, (5.0,) * 5, duration=7200.0, dt=0.5)
    final = result.samples[-1]
    stored = 1005.0 * FIVE_PHONES.air_mass * (final.air_temp - 25.0)
    for mass, temp in zip(FIVE_PHONES.device_masses, final.device_temps):
        stored += 705.0 * mass * (temp - 25.0)
    assert stored == approx(result.energy_in, rel=1e-9)


def test_early_window_power_matches_input():
    # before anything throttles, the warming rate accounts for the full
    # electrical input of 5 x 2.6 W
    result = simulate_box(FIVE_PHONES, (2.6,) * 5, duration=60.0, dt=0.5)
    watts = thermal_power(FIVE_PHONES, result.samples[0], result.samples[-1])
    assert watts == approx(13.0, rel=1e-9)


def test_lighter_devices_shut_down_first():
    result = simulate_box(FIVE_PHONES, (5.0,) * 5, duration=7200.0, dt=0.5)
    assert len(result.shutdowns) == 5
    # the four light devices trip together, the heavy one holds out longest
    light = [s for s in result.shutdowns if s.device_index < 4]
    heavy = [s for s in result.shutdowns if s.device_index == 4]
    assert len(light) == 4 and len(heavy) == 1
    assert max(s.time for s in light) < heavy[0].time
    assert all(s.temperature >= 77.0 for s in result.shutdowns)
    # shutdown is permanent: tripped devices only cool afterwards
    final = result.samples[-1]
    assert all(t < 77.0 for t in final.device_temps)


def test_throttling_lowers_temperature_and_energy():
    params = ThermalParams(air_mass=BOX_AIR_MASS_DEFAULT, device_masses=(0.33,))
    throttled = simulate_box(params, (2.0,), duration=5400.0, dt=0.5, throttle=True)
    open_loop = simulate_box(params, (2.0,), duration=5400.0, dt=0.5, throttle=False)
    assert not throttled.shutdowns and not open_loop.shutdowns
    assert throttled.samples[-1].device_temps[0] < open_loop.samples[-1].device_temps[0]
    assert throttled.energy_in < open_loop.energy_in
    assert open_loop.energy_in == approx(2.0 * 5400.0, rel=1e-9)


def test_simulate_box_input_checks():
    with pytest.raises(InputError, match="device powers"):
        simulate_box(FIVE_PHONES, (2.6,), duration=60.0)
    with pytest.raises(InputError, match="power 0"):
        simulate_box(FIVE_PHONES, (-1.0,) + (2.6,) * 4, duration=60.0)
    with pytest.raises(InputError):
        simulate_box(FIVE_PHONES, (2.6,) * 5, duration=0.0)


def test_params_validation():
    with pytest.raises(InputError, match="air_mass"):
        ThermalParams(air_mass=0.0, device_masses=(1.0,))
    with pytest.raises(InputError, match="at least one device"):
        ThermalParams(air_mass=1.0, device_masses=())
    with pytest.raises(InputError, match="shutdown_temp"):
        ThermalParams(air_mass=1.0, device_masses=(1.0,),
                      throttle_temp=80.0, shutdown_temp=77.0)
    with pytest.raises(InputError, match="throttle_floor"):
        ThermalParams(air_mass=1.0, device_masses=(1.0,), throttle_floor=0.0)


BOX_INI = """\
[box]
air_mass_kg = 0.0155
device_air_conductance_w_per_k = 0.035

[sim]
duration_s = 600
dt_s = 0.5
throttle = false

[device.phone_a]
mass_kg = 0.139
power_w = 2.6

[device.tablet]
mass_kg = 0.33
power_w = 5.0
"""


def test_parse_box_config():
    config = parse_box_config(BOX_INI, source="box.ini")
    assert config.device_names == ("phone_a", "tablet")
    assert config.device_powers == (2.6, 5.0)
    assert config.params.device_masses == (0.139, 0.33)
    assert config.params.throttle_temp == 45.0
    assert config.params.shutdown_temp == 77.0
    assert config.duration == 600.0
    assert config.dt == 0.5
    assert config.throttle is False
    result = simulate_box(config.params, config.device_powers,
                          config.duration, config.dt, config.throttle)
    assert result.energy_in == approx((2.6 + 5.0) * 600.0, rel=1e-9)


def test_parse_box_config_errors():
    with pytest.raises(InputError, match="missing \\[box\\] section"):
        parse_box_config("[device.x]\nmass_kg = 1\npower_w = 1\n")
    with pytest.raises(InputError, match="no \\[device"):
        parse_box_config("[box]\nair_mass_kg = 0.0155\n")
    with pytest.raises(InputError, match="mass_kg"):
        parse_box_config("[box]\n\n[device.x]\npower_w = 1\n")
