from pytest import approx

from jcci.units import (
    J_PER_KWH,
    SECONDS_PER_DAY,
    SECONDS_PER_HOUR,
    SECONDS_PER_MONTH,
    SECONDS_PER_YEAR,
    emissions_kg,
    energy_emissions_kg,
    kwh,
)


def test_calendar_constants():
    assert SECONDS_PER_HOUR == 3600
    assert SECONDS_PER_DAY == 86_400
    # Accounting year of 8760 hours; a month is exactly a twelfth (730 h).
    assert SECONDS_PER_YEAR == 8760 * 3600
    assert SECONDS_PER_MONTH == 730 * 3600
    assert SECONDS_PER_MONTH * 12 == SECONDS_PER_YEAR


def test_kwh():
    assert kwh(J_PER_KWH) == 1.0
    assert kwh(0.0) == 0.0
    # 100 W for an hour is a tenth of a kWh
    assert kwh(100.0 * 3600) == approx(0.1)


def test_emissions_kg():
    # 1 kW for 1 hour at 500 gCO2e/kWh is half a kilogram
    assert emissions_kg(1000.0, 3600.0, 500.0) == approx(0.5)
    assert emissions_kg(0.0, 3600.0, 500.0) == 0.0
    assert emissions_kg(1000.0, 3600.0, 0.0) == 0.0


def test_energy_emissions_matches_power_form():
    power, duration, ci = 42.0, 7200.0, 257.0
    assert energy_emissions_kg(power * duration, ci) == approx(
        emissions_kg(power, duration, ci)
    )
