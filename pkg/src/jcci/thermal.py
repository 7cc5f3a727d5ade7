"""Heat accounting for devices packed into an enclosure.

Two tools: an algebraic estimate of dissipated power from observed
warming rates, and a lumped-parameter simulation of devices in a box
with throttling and thermal shutdown.

The lumped model gives every device one thermal node (heat capacity
c_p_si * mass) coupled to a shared air node (c_p_air * air mass) by a
per-device conductance; the air node optionally leaks to ambient
through a box conductance, with zero meaning a sealed box. Integration
is forward Euler, so the step must stay well under the smallest
capacitance/conductance time constant; violations are rejected rather
than silently integrated into garbage.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, ModelError
from .registry import _SectionReader, _read_sections

# Specific heats: air at room temperature, silicon for device innards.
C_P_AIR_DEFAULT = 1005.0  # J/(kg K)
C_P_SILICON_DEFAULT = 705.0  # J/(kg K)

# Air mass of the reference enclosure (a roughly 5 x 15 x 10.5 inch box
# at 1.2 kg/m^3).
BOX_AIR_MASS_DEFAULT = 0.0155  # kg

# Device-to-air conductance calibrated so a phone-class device throttled
# to half power sits about 37 K above box air, putting shutdown near
# 40 C air temperature.
DEVICE_AIR_CONDUCTANCE_DEFAULT = 0.035  # W/K

STABILITY_MARGIN = 0.1  # dt must be below this fraction of the smallest time constant


@dataclass(frozen=True)
class ThermalSample:
    time: float
    air_temp: float
    device_temps: tuple[float, ...]


@dataclass(frozen=True)
class ShutdownEvent:
    time: float
    device_index: int
    temperature: float


@dataclass(frozen=True)
class ThermalParams:
    air_mass: float
    device_masses: tuple[float, ...]
    c_p_air: float = C_P_AIR_DEFAULT
    c_p_si: float = C_P_SILICON_DEFAULT
    throttle_temp: float = 45.0
    shutdown_temp: float = 77.0
    throttle_floor: float = 0.5  # power fraction remaining at the shutdown threshold
    device_air_conductance: float = DEVICE_AIR_CONDUCTANCE_DEFAULT
    box_ambient_conductance: float = 0.0  # 0 = sealed box
    ambient_temp: float = 25.0

    def __post_init__(self) -> None:
        if self.air_mass <= 0:
            raise InputError(f"air_mass must be > 0 kg, got {self.air_mass}")
        if not self.device_masses:
            raise InputError("at least one device mass is required")
        for i, mass in enumerate(self.device_masses):
            if mass <= 0:
                raise InputError(f"device mass {i} must be > 0 kg, got {mass}")
        if self.c_p_air <= 0 or self.c_p_si <= 0:
            raise InputError("specific heats must be > 0")
        if self.shutdown_temp <= self.throttle_temp:
            raise InputError(
                f"shutdown_temp {self.shutdown_temp} must exceed throttle_temp {self.throttle_temp}"
            )
        if not (0.0 < self.throttle_floor <= 1.0):
            raise InputError(f"throttle_floor {self.throttle_floor} outside (0, 1]")
        if self.device_air_conductance < 0 or self.box_ambient_conductance < 0:
            raise InputError("conductances must be >= 0 W/K")


@dataclass(frozen=True)
class BoxSimResult:
    samples: tuple[ThermalSample, ...]
    shutdowns: tuple[ShutdownEvent, ...]
    energy_in: float  # joules of electrical input actually dissipated


def thermal_power(params: ThermalParams, start: ThermalSample, end: ThermalSample) -> float:
    """Average dissipated power implied by warming between two samples.

    Sums the heat absorbed by the air and by every device over the
    elapsed time: (c_air*m_air*dT_air + sum c_si*m_i*dT_i) / dt.
    """
    for sample in (start, end):
        if len(sample.device_temps) != len(params.device_masses):
            raise InputError(
                f"sample has {len(sample.device_temps)} device temps but params "
                f"describe {len(params.device_masses)} devices"
            )
    elapsed = end.time - start.time
    if elapsed <= 0:
        raise ModelError(f"elapsed time must be > 0 s, got {elapsed}")
    heat = params.c_p_air * params.air_mass * (end.air_temp - start.air_temp)
    for mass, t0, t1 in zip(params.device_masses, start.device_temps, end.device_temps):
        heat += params.c_p_si * mass * (t1 - t0)
    return heat / elapsed


def provision_fans(total_thermal_w: float, fan_rating_w: float) -> int:
    """Fans needed to move a thermal load, whole fans only."""
    if fan_rating_w <= 0:
        raise InputError(f"fan rating must be > 0 W, got {fan_rating_w}")
    if total_thermal_w < 0:
        raise InputError(f"thermal load must be >= 0 W, got {total_thermal_w}")
    if total_thermal_w == 0:
        return 0
    return math.ceil(total_thermal_w / fan_rating_w)


def max_stable_dt(params: ThermalParams) -> float:
    """Largest step the explicit integrator accepts for these parameters."""
    taus = []
    g_dev = params.device_air_conductance
    if g_dev > 0:
        for mass in params.device_masses:
            taus.append(params.c_p_si * mass / g_dev)
    air_conductance = g_dev * len(params.device_masses) + params.box_ambient_conductance
    if air_conductance > 0:
        taus.append(params.c_p_air * params.air_mass / air_conductance)
    if not taus:
        return math.inf
    return STABILITY_MARGIN * min(taus)


def _throttle_factor(temp: float, params: ThermalParams) -> float:
    if temp <= params.throttle_temp:
        return 1.0
    if temp >= params.shutdown_temp:
        return params.throttle_floor
    span = params.shutdown_temp - params.throttle_temp
    return 1.0 - (1.0 - params.throttle_floor) * (temp - params.throttle_temp) / span


def simulate_box(
    params: ThermalParams,
    device_powers: tuple[float, ...],
    duration: float,
    dt: float = 1.0,
    throttle: bool = True,
) -> BoxSimResult:
    """Integrate box and device temperatures under constant electrical load.

    Devices linearly derate between the throttle and shutdown
    thresholds and power off permanently on crossing the shutdown
    temperature. Everything starts at ambient.
    """
    if len(device_powers) != len(params.device_masses):
        raise InputError(
            f"{len(device_powers)} device powers for {len(params.device_masses)} device masses"
        )
    for i, power in enumerate(device_powers):
        if power < 0:
            raise InputError(f"device power {i} must be >= 0 W, got {power}")
    if duration <= 0 or dt <= 0:
        raise InputError("duration and dt must be > 0 s")
    limit = max_stable_dt(params)
    if dt >= limit:
        raise ModelError(
            f"integration step {dt}s is unstable for these parameters; need dt < {limit:.3g}s"
        )

    n = len(params.device_masses)
    g_dev = params.device_air_conductance
    g_box = params.box_ambient_conductance
    c_air = params.c_p_air * params.air_mass
    c_dev = [params.c_p_si * mass for mass in params.device_masses]
    air = params.ambient_temp
    temps = [params.ambient_temp] * n
    alive = [True] * n
    energy_in = 0.0
    shutdowns: list[ShutdownEvent] = []
    samples = [ThermalSample(0.0, air, tuple(temps))]

    steps = math.ceil(duration / dt)
    for step in range(1, steps + 1):
        flows = [g_dev * (temps[i] - air) for i in range(n)]
        new_temps = []
        for i in range(n):
            power = 0.0
            if alive[i]:
                power = device_powers[i]
                if throttle:
                    power *= _throttle_factor(temps[i], params)
            energy_in += power * dt
            new_temps.append(temps[i] + (power - flows[i]) * dt / c_dev[i])
        air += (sum(flows) - g_box * (air - params.ambient_temp)) * dt / c_air
        temps = new_temps
        now = step * dt
        for i in range(n):
            if alive[i] and temps[i] >= params.shutdown_temp:
                alive[i] = False
                shutdowns.append(ShutdownEvent(now, i, temps[i]))
        samples.append(ThermalSample(now, air, tuple(temps)))

    return BoxSimResult(tuple(samples), tuple(shutdowns), energy_in)


@dataclass(frozen=True)
class BoxConfig:
    """A parsed box-simulation description: parameters plus run settings."""

    params: ThermalParams
    device_names: tuple[str, ...]
    device_powers: tuple[float, ...]
    duration: float
    dt: float
    throttle: bool


def parse_box_config(text: str, source: str = "<string>") -> BoxConfig:
    """Parse a box-simulation INI.

    [box] holds the enclosure and threshold parameters, [sim] the run
    settings, and each [device.<name>] a mass_kg and power_w pair.
    """
    sections = _read_sections(text, source)
    if "box" not in sections:
        raise InputError(f"{source}: missing [box] section")
    names = []
    masses = []
    powers = []
    for section in sections:
        if section.startswith("device."):
            reader = _SectionReader(section, sections[section])
            names.append(section.split(".", 1)[1])
            masses.append(reader.number("mass_kg"))
            powers.append(reader.number("power_w"))
    if not names:
        raise InputError(f"{source}: no [device.<name>] sections")
    box = _SectionReader("box", sections["box"])
    params = ThermalParams(
        air_mass=box.number("air_mass_kg", BOX_AIR_MASS_DEFAULT),
        device_masses=tuple(masses),
        c_p_air=box.number("c_p_air_j_per_kg_k", C_P_AIR_DEFAULT),
        c_p_si=box.number("c_p_device_j_per_kg_k", C_P_SILICON_DEFAULT),
        throttle_temp=box.number("throttle_temp_c", 45.0),
        shutdown_temp=box.number("shutdown_temp_c", 77.0),
        throttle_floor=box.number("throttle_floor", 0.5),
        device_air_conductance=box.number(
            "device_air_conductance_w_per_k", DEVICE_AIR_CONDUCTANCE_DEFAULT
        ),
        box_ambient_conductance=box.number("box_ambient_conductance_w_per_k", 0.0),
        ambient_temp=box.number("ambient_temp_c", 25.0),
    )
    sim = _SectionReader("sim", sections.get("sim", {}))
    return BoxConfig(
        params=params,
        device_names=tuple(names),
        device_powers=tuple(powers),
        duration=sim.number("duration_s", 7200.0),
        dt=sim.number("dt_s", 1.0),
        throttle=sim.boolean("throttle", True),
    )


def load_box_config(path: str) -> BoxConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read '{path}': {exc}") from None
    return parse_box_config(text, source=str(path))
