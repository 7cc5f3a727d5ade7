"""Computational carbon intensity for single devices.

The central quantity is carbon per unit of delivered work:

    cci = (manufacturing + compute + networking carbon) / lifetime operations

A reused device starts its second life with zero manufacturing debt;
only hardware added to keep it running (replacement batteries, support
peripherals) counts. Operational carbon is average wall power
integrated over the lifetime at a grid intensity, and networking carbon
prices the traffic the deployment serves at a per-byte energy
intensity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, ModelError
from .registry import BatterySpec, ComponentBreakdown, DeviceProfile, LoadProfile, avg_ops_rate, avg_power
from .units import SECONDS_PER_DAY, emissions_kg

MODES = ("new", "reused")

# (average device power in watts, deployment lifetime in seconds):
# enough to size battery replacements without a full charging simulation.
BatteryPolicy = tuple[float, float]


@dataclass(frozen=True)
class NetworkLoadSpec:
    """Sustained network load served by a deployment.

    ``f_net`` is bytes per second, ``ei_net`` joules per byte. Their
    product is the implied networking power in watts.
    """

    f_net: float
    ei_net: float

    def __post_init__(self) -> None:
        if self.f_net < 0:
            raise InputError(f"f_net must be >= 0 bytes/s, got {self.f_net}")
        if self.ei_net < 0:
            raise InputError(f"ei_net must be >= 0 J/byte, got {self.ei_net}")

    @property
    def implied_power(self) -> float:
        return self.f_net * self.ei_net


@dataclass(frozen=True)
class CarbonBreakdown:
    """Lifetime carbon split into manufacturing, compute, and network terms (kg)."""

    c_m: float
    c_c: float
    c_n: float

    def __post_init__(self) -> None:
        for name in ("c_m", "c_c", "c_n"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise InputError(f"carbon breakdown: {name} must be finite and >= 0, got {value}")

    @property
    def total(self) -> float:
        return self.c_m + self.c_c + self.c_n


@dataclass(frozen=True)
class CCIResult:
    breakdown: CarbonBreakdown
    lifetime: float
    total_ops: float
    cci: float

    def __post_init__(self) -> None:
        if self.total_ops <= 0:
            raise ModelError("undefined CCI: zero lifetime operations")
        scale = max(self.breakdown.total, self.cci * self.total_ops, 1.0)
        if abs(self.cci * self.total_ops - self.breakdown.total) > 1e-9 * scale:
            raise ModelError("CCI does not reconcile with its carbon breakdown")

    @classmethod
    def build(cls, breakdown: CarbonBreakdown, lifetime: float, total_ops: float) -> "CCIResult":
        if total_ops <= 0:
            raise ModelError("undefined CCI: zero lifetime operations")
        return cls(breakdown, lifetime, total_ops, breakdown.total / total_ops)

    @property
    def cci_mg(self) -> float:
        """CCI in milligrams per benchmark unit, the reporting convention."""
        return self.cci * 1e6


@dataclass(frozen=True)
class LifeTotals:
    """Aggregated carbon and operations for one life of a device."""

    c_c: float
    c_n: float
    ops: float
    c_m: float = 0.0


def compute_carbon(avg_power_w: float, lifetime_s: float, ci_g_per_kwh: float) -> float:
    """Operational carbon in kg: average power over a lifetime at a fixed intensity."""
    if avg_power_w < 0:
        raise InputError(f"average power must be >= 0 W, got {avg_power_w}")
    if lifetime_s < 0:
        raise InputError(f"lifetime must be >= 0 s, got {lifetime_s}")
    if ci_g_per_kwh < 0:
        raise InputError(f"carbon intensity must be >= 0, got {ci_g_per_kwh}")
    return emissions_kg(avg_power_w, lifetime_s, ci_g_per_kwh)


def network_carbon(net: NetworkLoadSpec, lifetime_s: float, ci_g_per_kwh: float) -> float:
    """Networking carbon in kg for a sustained traffic level."""
    return compute_carbon(net.implied_power, lifetime_s, ci_g_per_kwh)


def battery_lifetime_days(battery: BatterySpec, avg_power_w: float) -> float:
    """Days until the pack reaches its cycle limit feeding a steady load.

    The device draws avg_power_w around the clock from the battery, so
    daily energy throughput divided by usable pack energy is the
    equivalent full cycles per day.
    """
    if avg_power_w <= 0:
        raise ModelError("battery never cycles at zero average power")
    cycles_per_day = avg_power_w * SECONDS_PER_DAY / battery.usable_energy
    return battery.cycle_limit / cycles_per_day


def battery_replacement_carbon(battery: BatterySpec, avg_power_w: float, lifetime_s: float) -> float:
    """Embodied carbon of all packs consumed over a deployment, in kg.

    Packs are bought whole: a deployment outliving its n-th pack by any
    margin pays for pack n+1. Deployments too short to wear out the
    first pack still pay for one.
    """
    if lifetime_s < 0:
        raise InputError(f"lifetime must be >= 0 s, got {lifetime_s}")
    pack_lifetime_s = battery_lifetime_days(battery, avg_power_w) * SECONDS_PER_DAY
    replacements = max(1, math.ceil(lifetime_s / pack_lifetime_s))
    return battery.embodied_carbon * replacements


def reuse_factor(breakdown: ComponentBreakdown, reused_components: set[str]) -> float:
    """Fraction of a device's embodied carbon bound up in the reused components."""
    return sum(breakdown.fraction(category) for category in sorted(reused_components))


def embodied_carbon(
    device: DeviceProfile,
    mode: str,
    battery_policy: BatteryPolicy | None = None,
) -> float:
    """Manufacturing carbon charged to a deployment, in kg.

    A new device pays its full embodied total. A reused device pays
    nothing up front; with a battery policy it pays for the replacement
    packs its duty requires.
    """
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}, got '{mode}'")
    if mode == "new":
        return device.embodied_carbon_total
    if battery_policy is None:
        return 0.0
    if device.battery is None:
        raise InputError(f"device {device.name} has no battery to apply a battery policy to")
    policy_power, policy_lifetime = battery_policy
    return battery_replacement_carbon(device.battery, policy_power, policy_lifetime)


def cci_single(
    device: DeviceProfile,
    load: LoadProfile,
    bench_name: str,
    lifetime_s: float,
    ci_g_per_kwh: float,
    mode: str = "reused",
    net: NetworkLoadSpec | None = None,
    battery_policy: BatteryPolicy | None = None,
) -> CCIResult:
    """Carbon per benchmark unit for a single device over one deployment."""
    bench = device.benchmark(bench_name)
    ops = avg_ops_rate(bench, load) * lifetime_s
    if ops <= 0:
        raise ModelError(
            f"undefined CCI: {device.name}/{bench_name} delivers zero operations over this lifetime"
        )
    c_m = embodied_carbon(device, mode, battery_policy)
    c_c = compute_carbon(avg_power(device.power, load), lifetime_s, ci_g_per_kwh)
    c_n = network_carbon(net, lifetime_s, ci_g_per_kwh) if net is not None else 0.0
    return CCIResult.build(CarbonBreakdown(c_m=c_m, c_c=c_c, c_n=c_n), lifetime_s, ops)


def cci_two_life(first: LifeTotals, second: LifeTotals) -> float:
    """CCI across a first life and a reuse life sharing the manufacturing debt.

    The second life adds its operational and network carbon and its
    operations but no new manufacturing term.
    """
    total_ops = first.ops + second.ops
    if total_ops <= 0:
        raise ModelError("undefined CCI: zero operations across both lives")
    total_carbon = first.c_m + first.c_c + first.c_n + second.c_m + second.c_c + second.c_n
    return total_carbon / total_ops
