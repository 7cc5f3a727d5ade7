"""Unit conversions and calendar constants.

Grid intensities arrive in grams of CO2-equivalent per kilowatt-hour,
energy bookkeeping happens in joules, and carbon totals are reported in
kilograms. A year is 8760 hours and a month is one twelfth of that
(730 hours) everywhere in the package.
"""

J_PER_KWH = 3.6e6
SECONDS_PER_HOUR = 3600
SECONDS_PER_DAY = 86_400
SECONDS_PER_YEAR = 8760 * SECONDS_PER_HOUR
SECONDS_PER_MONTH = SECONDS_PER_YEAR // 12


def kwh(joules: float) -> float:
    return joules / J_PER_KWH


def emissions_kg(power_w: float, duration_s: float, ci_g_per_kwh: float) -> float:
    """Carbon mass of drawing power_w for duration_s at a fixed intensity."""
    return kwh(power_w * duration_s) * ci_g_per_kwh / 1000.0


def energy_emissions_kg(energy_j: float, ci_g_per_kwh: float) -> float:
    return kwh(energy_j) * ci_g_per_kwh / 1000.0


def months(n: float) -> float:
    return n * SECONDS_PER_MONTH


def years(n: float) -> float:
    return n * SECONDS_PER_YEAR


def days(n: float) -> float:
    return n * SECONDS_PER_DAY
