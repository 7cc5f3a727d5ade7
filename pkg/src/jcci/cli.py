"""Command-line interface.

Subcommands wrap the library one decision at a time: load inputs, run
one model operation or scenario, write CSV/SVG into the output
directory, and echo where the files went. Exit codes: 0 success,
1 bad input, 2 model-level failure.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from datetime import date
from pathlib import Path

import click

from . import charging, cluster, scenarios, thermal
from .errors import InputError, ModelError
from .grid import (
    STANDARD_MIXES,
    GridTrace,
    import_caiso,
    mean_intensity,
    mix_intensity,
    parse_trace,
    synthetic_trace,
    write_trace,
)
from .registry import Registry, default_registry, load_registry, serialize_registry
from .scenarios import Scenario, Step, run_scenario
from .units import SECONDS_PER_HOUR, SECONDS_PER_MONTH


@dataclass
class AppState:
    registry_path: str | None
    out_dir: Path
    fmt: str

    def registry(self) -> Registry:
        if self.registry_path:
            return load_registry(self.registry_path)
        return default_registry()

    def designs(self, registry: Registry, path: str | None) -> cluster.DesignBook:
        if path:
            return cluster.load_designs(path, registry)
        return cluster.default_designs(registry)


def _parse_month_grid(text: str) -> tuple[int, ...]:
    """Accept '36', '12,24,36', or 'start:stop:step' (stop inclusive)."""
    try:
        if ":" in text:
            start, stop, step = (int(part) for part in text.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            return tuple(range(start, stop + 1, step))
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InputError(
            f"cannot parse month grid '{text}' (use N, N,M,..., or start:stop:step)"
        ) from None


def _resolve_ci(value: str, interval: int = 300, tz: str = "UTC") -> float:
    """A --ci value is a mix name, a number, or a trace CSV path."""
    if value in STANDARD_MIXES:
        return mix_intensity(STANDARD_MIXES[value])
    try:
        return float(value)
    except ValueError:
        pass
    if Path(value).exists():
        return mean_intensity(parse_trace(value, interval, tz))
    raise InputError(
        f"--ci '{value}' is not a known mix {sorted(STANDARD_MIXES)}, a number, or a trace file"
    )


def _parse_trace_bindings(pairs: tuple[str, ...], interval: int, tz: str) -> dict[str, GridTrace]:
    traces: dict[str, GridTrace] = {}
    for pair in pairs:
        name, sep, path = pair.partition("=")
        if not sep or not name or not path:
            raise InputError(f"--trace expects name=path, got '{pair}'")
        traces[name] = parse_trace(path, interval, tz)
    return traces


def _run_steps(state: AppState, name: str, title: str, steps: tuple[Step, ...],
               registry: Registry | None = None,
               designs: cluster.DesignBook | None = None,
               traces: dict[str, GridTrace] | None = None) -> None:
    registry = registry if registry is not None else state.registry()
    bundle = run_scenario(
        Scenario(name, title, steps),
        registry,
        designs=designs,
        traces=traces,
        out_dir=state.out_dir,
        fmt=state.fmt,
    )
    for path in bundle.written:
        click.echo(f"wrote {path}")


@click.group()
@click.option(
    "--registry",
    "registry_path",
    envvar="JCCI_REGISTRY",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Registry INI (defaults to the bundled registry; env JCCI_REGISTRY).",
)
@click.option(
    "--out-dir",
    type=click.Path(file_okay=False),
    default="reports",
    show_default=True,
    help="Directory for CSV/SVG outputs.",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(scenarios.FORMATS),
    default="both",
    show_default=True,
    help="Which artifact kinds to write.",
)
@click.pass_context
def cli(ctx: click.Context, registry_path: str | None, out_dir: str, fmt: str) -> None:
    """Carbon accounting for reused-device compute."""
    ctx.obj = AppState(registry_path=registry_path, out_dir=Path(out_dir), fmt=fmt)


# --- registry ---------------------------------------------------------


@cli.group("registry")
def registry_group() -> None:
    """Inspect and validate device registries."""


@registry_group.command("validate")
@click.pass_obj
def registry_validate(state: AppState) -> None:
    """Load the registry and report what it contains."""
    registry = state.registry()
    click.echo(
        f"ok: {len(registry.devices)} devices, {len(registry.peripherals)} peripherals, "
        f"{len(registry.load_profiles)} load profiles"
    )


@registry_group.command("show")
@click.pass_obj
def registry_show(state: AppState) -> None:
    """Print the registry in its canonical INI form."""
    click.echo(serialize_registry(state.registry()), nl=False)


# --- grid -------------------------------------------------------------


@cli.group("grid")
def grid_group() -> None:
    """Carbon-intensity traces."""


@grid_group.command("synth")
@click.option("--start", required=True, help="First day, YYYY-MM-DD.")
@click.option("--days", type=int, required=True)
@click.option("--interval", type=int, default=300, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tz", default="UTC", show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def grid_synth(start: str, days: int, interval: int, seed: int, tz: str, out_path: str) -> None:
    """Write a deterministic synthetic daily-cycle trace."""
    trace = synthetic_trace(date.fromisoformat(start), days, interval=interval, seed=seed, tz=tz)
    write_trace(trace, out_path)
    click.echo(f"wrote {out_path} ({len(trace)} samples)")


@grid_group.command("import-caiso")
@click.option("--input", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--date", "day", required=True, help="Calendar date the file covers, YYYY-MM-DD.")
@click.option("--tz", default="America/Los_Angeles", show_default=True)
@click.option("--interval", type=int, default=300, show_default=True)
@click.option("--time-col", default="Time", show_default=True)
@click.option("--co2-col", default="CO2", show_default=True)
@click.option("--supply-col", default="Supply", show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def grid_import_caiso(
    in_path: str,
    day: str,
    tz: str,
    interval: int,
    time_col: str,
    co2_col: str,
    supply_col: str,
    out_path: str,
) -> None:
    """Convert a grid-operator daily CSV to the canonical trace format."""
    trace = import_caiso(
        in_path,
        time_col=time_col,
        co2_col=co2_col,
        supply_col=supply_col,
        day=date.fromisoformat(day),
        interval=interval,
        tz=tz,
    )
    write_trace(trace, out_path)
    click.echo(f"wrote {out_path} ({len(trace)} samples)")


# --- cci --------------------------------------------------------------


@cli.group("cci")
def cci_group() -> None:
    """Computational carbon intensity of single devices."""


@cci_group.command("single")
@click.option("--device", required=True)
@click.option("--benchmark", required=True)
@click.option("--mode", type=click.Choice(("reused", "new")), default="reused", show_default=True)
@click.option("--ci", default="california", show_default=True,
              help="Energy mix name, gCO2e/kWh value, or trace CSV path.")
@click.option("--lifetime-months", default="3:60:3", show_default=True)
@click.pass_obj
def cci_single_cmd(state: AppState, device: str, benchmark: str, mode: str, ci: str,
                   lifetime_months: str) -> None:
    """Carbon per benchmark unit over a lifetime grid."""
    months = _parse_month_grid(lifetime_months)
    step = Step(
        "cci_grid",
        f"cci_{device}_{benchmark}",
        {
            "devices": ((device, mode),),
            "benchmarks": (benchmark,),
            "months": months,
            "ci": _resolve_ci(ci),
        },
    )
    _run_steps(state, "cci_single", "Single-device CCI", (step,))


# --- charge -----------------------------------------------------------


@cli.group("charge")
def charge_group() -> None:
    """Carbon-aware charge scheduling."""


@charge_group.command("duty")
@click.option("--device", required=True)
@click.option("--soc", type=float, default=0.25, show_default=True,
              help="State of charge for the backup-runtime estimate.")
@click.option("--load", "load_name", default="light_medium", show_default=True)
@click.pass_obj
def charge_duty(state: AppState, device: str, soc: float, load_name: str) -> None:
    """Charger duty cycle and battery backup runtime."""
    registry = state.registry()
    profile = registry.device(device)
    load = registry.load_profile(load_name)
    duty = charging.required_duty(profile, load)
    runtime = charging.backup_runtime(profile, load, soc)
    click.echo(f"duty_percent={duty:.4g}")
    click.echo(f"backup_runtime_hours at soc {soc:g}: {runtime / SECONDS_PER_HOUR:.4g}")


@charge_group.command("simulate")
@click.option("--device", required=True)
@click.option("--trace", "trace_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--interval", type=int, default=300, show_default=True)
@click.option("--tz", default="UTC", show_default=True)
@click.option("--percentile", type=float, default=None,
              help="Charge-threshold percentile (default: duty-matched).")
@click.option("--min-soc", type=float, default=0.25, show_default=True)
@click.option("--initial-soc", type=float, default=1.0, show_default=True)
@click.option("--load", "load_name", default="light_medium", show_default=True)
@click.pass_obj
def charge_simulate(state: AppState, device: str, trace_path: str, interval: int, tz: str,
                    percentile: float | None, min_soc: float, initial_soc: float,
                    load_name: str) -> None:
    """Simulate the charge schedule over a trace and price the savings."""
    registry = state.registry()
    profile = registry.device(device)
    load = registry.load_profile(load_name)
    trace = parse_trace(trace_path, interval, tz)
    policy = charging.ChargePolicy(percentile_p=percentile, min_soc=min_soc)
    result = charging.simulate(profile, load, trace, policy, initial_soc=initial_soc)

    state.out_dir.mkdir(parents=True, exist_ok=True)
    if state.fmt in ("csv", "both"):
        schedule = scenarios.Table(
            f"charge_{device}_schedule",
            ("timestamp", "soc", "charging", "forced", "intensity_gco2e_kwh", "provenance"),
            tuple(
                (s.timestamp, s.soc, s.charging, s.forced, s.intensity, "computed")
                for s in result.steps
            ),
        )
        summary = scenarios.Table(
            f"charge_{device}_summary",
            ("metric", "value", "provenance"),
            (
                ("smart_carbon_kg", result.smart_carbon, "computed"),
                ("baseline_carbon_kg", result.baseline_carbon, "computed"),
                ("aggregate_savings_fraction", result.savings_fraction, "computed"),
                ("median_daily_savings_fraction", result.median_daily_savings, "computed"),
                ("forced_charge_steps", result.forced_charge_steps, "computed"),
                ("equivalent_cycles", result.final_state.equivalent_cycles, "computed"),
            ),
        )
        for table in (schedule, summary):
            path = state.out_dir / f"{table.name}.csv"
            scenarios.write_table(table, path)
            click.echo(f"wrote {path}")
    click.echo(f"aggregate_savings_fraction={result.savings_fraction:.6g}")
    click.echo(f"median_daily_savings_fraction={result.median_daily_savings:.6g}")


# --- thermal ----------------------------------------------------------


@cli.group("thermal")
def thermal_group() -> None:
    """Heat dissipation and enclosure simulation."""


@thermal_group.command("power")
@click.option("--from", "csv_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="CSV with columns time_s,air_temp_c,<device temps...>.")
@click.option("--air-mass", type=float, default=thermal.BOX_AIR_MASS_DEFAULT, show_default=True)
@click.option("--device-mass", "device_masses", required=True,
              help="Comma-separated device masses in kg, one per temperature column.")
def thermal_power_cmd(csv_path: str, air_mass: float, device_masses: str) -> None:
    """Average dissipated power implied by warming between first and last samples."""
    import csv as csv_mod

    try:
        masses = tuple(float(part) for part in device_masses.split(","))
    except ValueError:
        raise InputError(f"cannot parse --device-mass '{device_masses}'") from None
    with open(csv_path, "r", encoding="utf-8", newline="") as handle:
        rows = list(csv_mod.reader(handle))
    if len(rows) < 3:
        raise InputError(f"{csv_path}: need a header and at least two samples")
    header = rows[0]
    if header[:2] != ["time_s", "air_temp_c"]:
        raise InputError(f"{csv_path}: header must start with time_s,air_temp_c")
    try:
        samples = [
            thermal.ThermalSample(float(r[0]), float(r[1]), tuple(float(v) for v in r[2:]))
            for r in rows[1:]
        ]
    except (ValueError, IndexError):
        raise InputError(f"{csv_path}: malformed sample row") from None
    params = thermal.ThermalParams(air_mass=air_mass, device_masses=masses)
    watts = thermal.thermal_power(params, samples[0], samples[-1])
    click.echo(f"dissipated_power_w={watts:.6g}")


@thermal_group.command("simulate")
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def thermal_simulate(state: AppState, config_path: str) -> None:
    """Run the box simulation described by an INI config."""
    config = thermal.load_box_config(config_path)
    result = thermal.simulate_box(
        config.params, config.device_powers, config.duration, config.dt, config.throttle
    )
    stem = Path(config_path).stem
    table = scenarios.Table(
        f"thermal_{stem}",
        ("time_s", "air_temp_c") + tuple(f"{n}_temp_c" for n in config.device_names)
        + ("provenance",),
        tuple(
            (s.time, s.air_temp) + s.device_temps + ("computed",)
            for s in result.samples
        ),
    )
    if state.fmt in ("csv", "both"):
        state.out_dir.mkdir(parents=True, exist_ok=True)
        path = state.out_dir / f"{table.name}.csv"
        scenarios.write_table(table, path)
        click.echo(f"wrote {path}")
    click.echo(f"energy_in_j={result.energy_in:.6g}")
    for event in result.shutdowns:
        name = config.device_names[event.device_index]
        click.echo(f"shutdown: {name} at t={event.time:.6g}s, {event.temperature:.4g} C")
    if not result.shutdowns:
        click.echo("shutdown: none")


@thermal_group.command("fans")
@click.option("--watts", type=float, required=True)
@click.option("--fan-rating", type=float, default=500.0, show_default=True)
def thermal_fans(watts: float, fan_rating: float) -> None:
    """Fans needed to move the given heat load."""
    click.echo(f"fans={thermal.provision_fans(watts, fan_rating)}")


# --- cluster ----------------------------------------------------------


@cli.group("cluster")
def cluster_group() -> None:
    """Equivalent clusters of reused devices."""


@cluster_group.command("size")
@click.option("--baseline", default="poweredge_r740", show_default=True)
@click.pass_obj
def cluster_size(state: AppState, baseline: str) -> None:
    """Devices per cluster to match the baseline, all benchmarks."""
    step = Step("sizing", "cluster_sizing", {"baseline": baseline})
    _run_steps(state, "cluster_size", "Cluster sizing", (step,))


@cluster_group.command("cci")
@click.option("--design", required=True, help="Design name in the designs file.")
@click.option("--designs", "designs_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Designs INI (defaults to the bundled designs).")
@click.option("--benchmark", default="sgemm", show_default=True)
@click.option("--regime", type=click.Choice(cluster.REGIMES), default="ca", show_default=True)
@click.option("--lifetime-months", default="3:60:3", show_default=True)
@click.pass_obj
def cluster_cci_cmd(state: AppState, design: str, designs_path: str | None, benchmark: str,
                    regime: str, lifetime_months: str) -> None:
    """Cluster CCI over a lifetime grid under a power regime."""
    registry = state.registry()
    step = Step(
        "cluster_grid",
        f"cluster_cci_{design}",
        {
            "designs": (design,),
            "benchmarks": (benchmark,),
            "regimes": (regime,),
            "months": _parse_month_grid(lifetime_months),
        },
    )
    _run_steps(state, "cluster_cci", "Cluster CCI", (step,), registry=registry,
               designs=state.designs(registry, designs_path))


# --- dc ---------------------------------------------------------------


@cli.group("dc")
def dc_group() -> None:
    """Datacenter halls built from cluster designs."""


@dc_group.command("pue")
@click.option("--datacenter", required=True)
@click.option("--designs", "designs_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
@click.option("--load", "load_name", default="light_medium", show_default=True)
@click.pass_obj
def dc_pue(state: AppState, datacenter: str, designs_path: str | None, load_name: str) -> None:
    """Power usage effectiveness of a hall."""
    registry = state.registry()
    designs = state.designs(registry, designs_path)
    value = cluster.pue(designs.datacenter(datacenter), registry.load_profile(load_name))
    click.echo(f"pue={value:.6g}")


@dc_group.command("cci")
@click.option("--datacenter", required=True)
@click.option("--designs", "designs_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
@click.option("--benchmark", "benchmarks", multiple=True, default=("sgemm",), show_default=True)
@click.option("--months", type=int, default=36, show_default=True)
@click.option("--ci", default="california", show_default=True)
@click.pass_obj
def dc_cci(state: AppState, datacenter: str, designs_path: str | None,
           benchmarks: tuple[str, ...], months: int, ci: str) -> None:
    """Datacenter-scale CCI with the PUE multiplier applied."""
    registry = state.registry()
    step = Step(
        "dc_table",
        f"dc_cci_{datacenter}",
        {
            "datacenters": (datacenter,),
            "benchmarks": benchmarks,
            "months": months,
            "ci": _resolve_ci(ci),
        },
    )
    _run_steps(state, "dc_cci", "Datacenter CCI", (step,), registry=registry,
               designs=state.designs(registry, designs_path))


@dc_group.command("calibrate")
@click.option("--datacenter", required=True)
@click.option("--designs", "designs_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
@click.option("--target-pue", type=float, required=True)
@click.option("--load", "load_name", default="light_medium", show_default=True)
@click.pass_obj
def dc_calibrate(state: AppState, datacenter: str, designs_path: str | None,
                 target_pue: float, load_name: str) -> None:
    """Cooling overhead fraction that would hit the target PUE."""
    registry = state.registry()
    designs = state.designs(registry, designs_path)
    fraction = cluster.calibrate_cooling_overhead(
        designs.datacenter(datacenter), registry.load_profile(load_name), target_pue
    )
    click.echo(f"cooling_overhead_fraction={fraction:.6g}")


# --- compare / cost ---------------------------------------------------


@cli.group("compare")
def compare_group() -> None:
    """Head-to-head carbon comparisons."""


@compare_group.command("queries")
@click.option("--designs", "designs_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
@click.option("--query", "queries", multiple=True,
              help="Query scenario names (default: all in the designs file).")
@click.pass_obj
def compare_queries(state: AppState, designs_path: str | None, queries: tuple[str, ...]) -> None:
    """Per-query carbon of each hosted application vs its rental rival."""
    registry = state.registry()
    designs = state.designs(registry, designs_path)
    names = queries or tuple(designs.query_scenarios)
    if not names:
        raise InputError("no query scenarios defined")
    step = Step("query_table", "query_carbon", {"scenarios": names})
    _run_steps(state, "compare_queries", "Per-query carbon", (step,), registry=registry,
               designs=designs)
    for name in names:
        scenario, design_name = designs.query_scenario(name)
        ratio = cluster.query_carbon_comparison(scenario, designs.design(design_name))
        click.echo(f"{name}: rival emits {ratio:.3g}x the carbon per query")


@cli.command("cost")
@click.option("--design", required=True)
@click.option("--designs", "designs_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
@click.option("--months", type=int, default=36, show_default=True)
@click.option("--unit-price", type=float, required=True, help="USD per device.")
@click.option("--energy-price", type=float, required=True, help="USD per kWh.")
@click.option("--hourly-rate", type=float, required=True, help="Rival rental USD per hour.")
@click.option("--quoted", type=float, default=None, help="Published rival total, if any.")
@click.pass_obj
def cost_cmd(state: AppState, design: str, designs_path: str | None, months: int,
             unit_price: float, energy_price: float, hourly_rate: float,
             quoted: float | None) -> None:
    """Deployment cost of owning the cluster vs renting the rival."""
    registry = state.registry()
    designs = state.designs(registry, designs_path)
    params: dict[str, object] = {
        "design": design,
        "months": months,
        "unit_price_usd": unit_price,
        "energy_price_usd_per_kwh": energy_price,
        "rental_usd_per_hour": hourly_rate,
    }
    if quoted is not None:
        params["rental_quoted_usd"] = quoted
    step = Step("cost_table", f"cost_{design}", params)
    _run_steps(state, "cost", "Deployment cost", (step,), registry=registry, designs=designs)
    load = registry.load_profile("light_medium")
    own = cluster.deployment_cost(
        designs.design(design), load, unit_price, energy_price, months * SECONDS_PER_MONTH
    )
    rent = cluster.rental_cost(hourly_rate, months * SECONDS_PER_MONTH)
    click.echo(f"own_usd={own:.2f}")
    click.echo(f"rent_usd={rent:.2f}")


# --- scenario ---------------------------------------------------------


@cli.group("scenario")
def scenario_group() -> None:
    """Bundled report scenarios."""


@scenario_group.command("list")
def scenario_list() -> None:
    """Names and titles of the bundled scenarios."""
    for name in scenarios.list_scenarios():
        click.echo(f"{name}: {scenarios.bundled_scenario(name).title}")


@scenario_group.command("run")
@click.argument("names", nargs=-1, required=True)
@click.option("--trace", "trace_pairs", multiple=True,
              help="Bind a named trace: name=path (repeatable).")
@click.option("--interval", type=int, default=300, show_default=True)
@click.option("--tz", default="UTC", show_default=True)
@click.option("--designs", "designs_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
@click.pass_obj
def scenario_run(state: AppState, names: tuple[str, ...], trace_pairs: tuple[str, ...],
                 interval: int, tz: str, designs_path: str | None) -> None:
    """Run bundled scenarios by name and write their reports."""
    registry = state.registry()
    designs = state.designs(registry, designs_path)
    traces = _parse_trace_bindings(trace_pairs, interval, tz)
    for name in names:
        bundle = run_scenario(
            scenarios.bundled_scenario(name),
            registry,
            designs=designs,
            traces=traces,
            out_dir=state.out_dir,
            fmt=state.fmt,
        )
        for path in bundle.written:
            click.echo(f"wrote {path}")


def main(argv: list[str] | None = None) -> int:
    """Entry point mapping domain errors to exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except ModelError as exc:
        click.echo(f"model error: {exc}", err=True)
        return 2
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
