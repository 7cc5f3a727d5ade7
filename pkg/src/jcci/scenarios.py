"""Named report scenarios: bind the registry, designs, and traces, run a
sequence of model operations, and emit CSV tables and SVG charts.

Outputs are deterministic byte-for-byte so they can be golden-file
tested. Every table row carries a provenance column: "computed" for
values produced by the model, "published-override" where a stored
published figure disagrees with the computed one.
"""
from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from datetime import date, datetime, time
from pathlib import Path

from . import charging, cluster
from .carbon import cci_single
from .cluster import DesignBook, datacenter_cci, default_designs, sizing_table
from .errors import InputError, JCCIError
from .grid import STANDARD_MIXES, GridTrace, mix_intensity, synthetic_trace
from .registry import LoadProfile, Registry
from .svg import ChartSpec, Series, emit_chart
from .units import SECONDS_PER_MONTH

FORMATS = ("csv", "svg", "both")
_STEM_RE = re.compile(r"^[a-z0-9_]+$")
_MISSING = object()


@dataclass(frozen=True)
class Step:
    op: str
    out: str  # output file stem; tables and charts derive names from it
    params: dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not _STEM_RE.match(self.out):
            raise InputError(f"step output stem '{self.out}' must be [a-z0-9_]+")
        if self.op not in OPS:
            raise InputError(f"unknown op '{self.op}' (expected one of {sorted(OPS)})")


@dataclass(frozen=True)
class Scenario:
    name: str
    title: str
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        if not _STEM_RE.match(self.name):
            raise InputError(f"scenario name '{self.name}' must be [a-z0-9_]+")
        stems = [step.out for step in self.steps]
        if len(set(stems)) != len(stems):
            raise InputError(f"scenario {self.name}: duplicate step output stems")


@dataclass(frozen=True)
class Table:
    name: str
    columns: tuple[str, ...]
    rows: tuple[tuple[object, ...], ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.columns):
                raise InputError(
                    f"table {self.name}: row width {len(row)} vs {len(self.columns)} columns"
                )


@dataclass(frozen=True)
class Chart:
    name: str
    dataset: tuple[Series, ...]
    spec: ChartSpec


@dataclass(frozen=True)
class ReportBundle:
    scenario: str
    tables: tuple[Table, ...]
    charts: tuple[Chart, ...]
    written: tuple[Path, ...]


@dataclass(frozen=True)
class RunContext:
    registry: Registry
    designs: DesignBook
    traces: dict[str, GridTrace]
    load: LoadProfile


MONTH_GRID = tuple(range(3, 61, 3))


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".10g")
    if isinstance(value, date):
        return value.isoformat()
    return str(value)


def write_table(table: Table, path: Path) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell(v) for v in row])
    path.write_bytes(buffer.getvalue().encode("utf-8"))


def run_scenario(
    scenario: Scenario,
    registry: Registry,
    designs: DesignBook | None = None,
    traces: dict[str, GridTrace] | None = None,
    out_dir: str | Path | None = None,
    fmt: str = "both",
    load_name: str = "light_medium",
) -> ReportBundle:
    """Execute every step and optionally write the outputs.

    fmt selects which artifact kinds get written; the returned bundle
    always carries both. out_dir=None runs in memory only.
    """
    if fmt not in FORMATS:
        raise InputError(f"format '{fmt}' not one of {FORMATS}")
    ctx = RunContext(
        registry=registry,
        designs=designs if designs is not None else default_designs(registry),
        traces=traces or {},
        load=registry.load_profile(load_name),
    )
    tables: list[Table] = []
    charts: list[Chart] = []
    for index, step in enumerate(scenario.steps):
        handler = OPS[step.op]
        try:
            step_tables, step_charts = handler(step, ctx)
        except JCCIError as exc:
            raise type(exc)(
                f"scenario {scenario.name} step {index + 1} ({step.op}): {exc}"
            ) from exc
        tables.extend(step_tables)
        charts.extend(step_charts)

    written: list[Path] = []
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        if fmt in ("csv", "both"):
            for table in tables:
                path = out / f"{table.name}.csv"
                write_table(table, path)
                written.append(path)
        if fmt in ("svg", "both"):
            for chart in charts:
                path = out / f"{chart.name}.svg"
                path.write_bytes(emit_chart(chart.dataset, chart.spec))
                written.append(path)
    return ReportBundle(
        scenario=scenario.name,
        tables=tuple(tables),
        charts=tuple(charts),
        written=tuple(written),
    )


def _param(step: Step, key: str, default: object = _MISSING) -> object:
    value = step.params.get(key, default)
    if value is _MISSING:
        raise InputError(f"op {step.op} missing parameter '{key}'")
    return value


def _mix_ci(name: str) -> float:
    if name not in STANDARD_MIXES:
        raise InputError(f"unknown energy mix '{name}' (expected one of {sorted(STANDARD_MIXES)})")
    return mix_intensity(STANDARD_MIXES[name])


def _ci_param(step: Step) -> float:
    """Steps accept either a named mix or a literal gCO2e/kWh value."""
    ci = step.params.get("ci")
    if ci is not None:
        return float(ci)
    return _mix_ci(str(_param(step, "mix")))


def _resolve_trace(step: Step, ctx: RunContext) -> GridTrace:
    name = _param(step, "trace", None)
    if name is not None:
        if name not in ctx.traces:
            raise InputError(f"trace '{name}' not provided (pass --trace {name}=<csv>)")
        return ctx.traces[str(name)]
    synth = _param(step, "synth", None)
    if synth is None:
        raise InputError("step needs either a 'trace' name or 'synth' parameters")
    kwargs = dict(synth)
    kwargs["start"] = date.fromisoformat(str(kwargs["start"]))
    return synthetic_trace(**kwargs)


# --- ops -------------------------------------------------------------


def _op_cci_grid(step: Step, ctx: RunContext):
    """Single-device CCI over a lifetime grid, one chart per benchmark."""
    devices = _param(step, "devices")  # ((device, mode), ...)
    benchmarks = _param(step, "benchmarks")
    months = _param(step, "months", MONTH_GRID)
    ci = _ci_param(step)
    rows = []
    charts = []
    for bench_name in benchmarks:
        series = []
        unit = ""
        for device_name, mode in devices:
            device = ctx.registry.device(str(device_name))
            unit = device.benchmark(str(bench_name)).unit
            ys = []
            for m in months:
                result = cci_single(
                    device, ctx.load, str(bench_name), m * SECONDS_PER_MONTH, ci, mode=str(mode)
                )
                ys.append(result.cci_mg)
                rows.append(
                    (
                        bench_name,
                        device_name,
                        mode,
                        m,
                        result.breakdown.c_m,
                        result.breakdown.c_c,
                        result.breakdown.c_n,
                        result.total_ops,
                        result.cci_mg,
                        "computed",
                    )
                )
            series.append(
                Series(f"{device_name} ({mode})", tuple(float(m) for m in months), tuple(ys))
            )
        charts.append(
            Chart(
                f"{step.out}_{bench_name}",
                tuple(series),
                ChartSpec(
                    title=f"Device CCI, {bench_name}",
                    x_label="deployment lifetime (months)",
                    y_label=f"CCI (mg CO2e per {unit})",
                ),
            )
        )
    table = Table(
        step.out,
        (
            "benchmark",
            "device",
            "mode",
            "lifetime_months",
            "c_m_kg",
            "c_c_kg",
            "c_n_kg",
            "ops",
            "cci_mg",
            "provenance",
        ),
        tuple(rows),
    )
    return [table], charts


def _op_mix_cci_grid(step: Step, ctx: RunContext):
    """One device+benchmark across several energy mixes, single chart."""
    devices = _param(step, "devices")
    bench_name = str(_param(step, "benchmark"))
    mixes = _param(step, "mixes")
    months = _param(step, "months", MONTH_GRID)
    rows = []
    series = []
    unit = ""
    for device_name, mode in devices:
        device = ctx.registry.device(str(device_name))
        unit = device.benchmark(bench_name).unit
        for mix_name in mixes:
            ci = _mix_ci(str(mix_name))
            ys = []
            for m in months:
                result = cci_single(
                    device, ctx.load, bench_name, m * SECONDS_PER_MONTH, ci, mode=str(mode)
                )
                ys.append(result.cci_mg)
                rows.append((device_name, mode, mix_name, ci, m, result.cci_mg, "computed"))
            series.append(
                Series(
                    f"{device_name} ({mode}), {mix_name}",
                    tuple(float(m) for m in months),
                    tuple(ys),
                )
            )
    table = Table(
        step.out,
        ("device", "mode", "mix", "ci_g_per_kwh", "lifetime_months", "cci_mg", "provenance"),
        tuple(rows),
    )
    chart = Chart(
        step.out,
        tuple(series),
        ChartSpec(
            title=f"Energy mix and CCI, {bench_name}",
            x_label="deployment lifetime (months)",
            y_label=f"CCI (mg CO2e per {unit})",
        ),
    )
    return [table], [chart]


def _op_trace_chart(step: Step, ctx: RunContext):
    """Plot the first days of a carbon-intensity trace."""
    trace = _resolve_trace(step, ctx)
    days = int(_param(step, "days", 3))
    limit = trace.timestamps[0] + days * 86_400
    xs = []
    ys = []
    for ts, value in zip(trace.timestamps, trace.intensities):
        if ts >= limit:
            break
        xs.append((ts - trace.timestamps[0]) / 3600.0)
        ys.append(value)
    covered = sorted({trace.local_date(ts) for ts in trace.timestamps[: len(xs)]})
    table = Table(
        step.out,
        ("day", "mean_g_per_kwh", "min_g_per_kwh", "max_g_per_kwh", "provenance"),
        tuple(
            (
                day,
                _day_stat(trace, day, "mean"),
                _day_stat(trace, day, "min"),
                _day_stat(trace, day, "max"),
                "computed",
            )
            for day in covered
        ),
    )
    chart = Chart(
        step.out,
        (Series("grid intensity", tuple(xs), tuple(ys)),),
        ChartSpec(
            title="Grid carbon intensity",
            x_label="hours from trace start",
            y_label="gCO2e/kWh",
        ),
    )
    return [table], [chart]


def _day_stat(trace: GridTrace, day: date, kind: str) -> float:
    values = [v for ts, v in zip(trace.timestamps, trace.intensities) if trace.local_date(ts) == day]
    if kind == "mean":
        return sum(values) / len(values)
    return min(values) if kind == "min" else max(values)


def charge_day_chart(
    result: charging.ChargeSimResult, trace: GridTrace, day: date, title: str
) -> tuple[tuple[Series, ...], ChartSpec]:
    """Intensity over one local day with charge windows shaded.

    Shaded x-ranges are the simulation's charge windows clipped to the
    day, in hours from local midnight, so tests can compare them
    directly against the schedule.
    """
    day_start = int(datetime.combine(day, time.min, tzinfo=trace.zone).timestamp())
    day_end = day_start + 86_400
    xs = []
    ys = []
    for step in result.steps:
        if day_start <= step.timestamp < day_end:
            xs.append((step.timestamp - day_start) / 3600.0)
            ys.append(step.intensity)
    if not xs:
        raise InputError(f"simulation has no samples on {day.isoformat()}")
    shaded = []
    for start, end in result.schedule:
        lo = max(start, day_start)
        hi = min(end, day_end)
        if lo < hi:
            shaded.append(((lo - day_start) / 3600.0, (hi - day_start) / 3600.0))
    dataset = (Series("grid intensity", tuple(xs), tuple(ys)),)
    spec = ChartSpec(
        title=title,
        x_label=f"hour of {day.isoformat()}",
        y_label="gCO2e/kWh",
        shaded=tuple(shaded),
    )
    return dataset, spec


def _op_charge_day(step: Step, ctx: RunContext):
    """Simulate charge scheduling and report one day in detail."""
    device = ctx.registry.device(str(_param(step, "device")))
    trace = _resolve_trace(step, ctx)
    policy = charging.ChargePolicy(
        percentile_p=_param(step, "percentile", None),
        min_soc=float(_param(step, "min_soc", 0.25)),
    )
    result = charging.simulate(device, ctx.load, trace, policy)
    dates = sorted({trace.local_date(ts) for ts in trace.timestamps})
    day_index = int(_param(step, "day_index", len(dates) // 2))
    if not (0 <= day_index < len(dates)):
        raise InputError(f"day_index {day_index} outside trace ({len(dates)} days)")
    day = dates[day_index]

    schedule_rows = []
    day_start = int(datetime.combine(day, time.min, tzinfo=trace.zone).timestamp())
    for sim_step in result.steps:
        if trace.local_date(sim_step.timestamp) == day:
            schedule_rows.append(
                (
                    sim_step.timestamp,
                    (sim_step.timestamp - day_start) / 3600.0,
                    sim_step.intensity,
                    sim_step.soc,
                    sim_step.charging,
                    sim_step.forced,
                    "computed",
                )
            )
    schedule = Table(
        f"{step.out}_schedule",
        ("timestamp", "hour", "intensity_gco2e_kwh", "soc", "charging", "forced", "provenance"),
        tuple(schedule_rows),
    )
    summary = Table(
        f"{step.out}_summary",
        ("metric", "value", "provenance"),
        (
            ("device", device.name, "computed"),
            ("duty_percent", charging.required_duty(device, ctx.load), "computed"),
            ("smart_carbon_kg", result.smart_carbon, "computed"),
            ("baseline_carbon_kg", result.baseline_carbon, "computed"),
            ("aggregate_savings_fraction", result.savings_fraction, "computed"),
            ("median_daily_savings_fraction", result.median_daily_savings, "computed"),
            ("forced_charge_steps", result.forced_charge_steps, "computed"),
            ("equivalent_cycles", result.final_state.equivalent_cycles, "computed"),
        ),
    )
    dataset, spec = charge_day_chart(
        result, trace, day, f"{device.name} charge scheduling, {day.isoformat()}"
    )
    return [schedule, summary], [Chart(step.out, dataset, spec)]


def _op_cluster_grid(step: Step, ctx: RunContext):
    """Cluster CCI over a lifetime grid, one chart per benchmark x regime."""
    design_names = _param(step, "designs")
    benchmarks = _param(step, "benchmarks")
    regimes = _param(step, "regimes")
    months = _param(step, "months", MONTH_GRID)
    lifetimes = [m * SECONDS_PER_MONTH for m in months]
    rows = []
    charts = []
    for bench_name in benchmarks:
        for regime in regimes:
            series = []
            unit = ""
            for design_name in design_names:
                base = ctx.designs.design(str(design_name))
                design, ci = cluster.apply_regime(base, str(regime))
                unit = design.device.benchmark(str(bench_name)).unit
                results = cluster.cluster_cci(design, ctx.load, str(bench_name), lifetimes, ci)
                for m, result in zip(months, results):
                    rows.append(
                        (
                            regime,
                            bench_name,
                            design_name,
                            design.n_devices,
                            m,
                            result.breakdown.c_m,
                            result.breakdown.c_c,
                            result.breakdown.c_n,
                            result.cci_mg,
                            "computed",
                        )
                    )
                series.append(
                    Series(
                        str(design_name),
                        tuple(float(m) for m in months),
                        tuple(r.cci_mg for r in results),
                    )
                )
            charts.append(
                Chart(
                    f"{step.out}_{bench_name}_{regime}",
                    tuple(series),
                    ChartSpec(
                        title=f"Cluster CCI, {bench_name}, {regime} regime",
                        x_label="deployment lifetime (months)",
                        y_label=f"CCI (mg CO2e per {unit})",
                    ),
                )
            )
    table = Table(
        step.out,
        (
            "regime",
            "benchmark",
            "design",
            "n_devices",
            "lifetime_months",
            "c_m_kg",
            "c_c_kg",
            "c_n_kg",
            "cci_mg",
            "provenance",
        ),
        tuple(rows),
    )
    return [table], charts


def _op_sizing(step: Step, ctx: RunContext):
    """Equivalent-cluster sizes with published overrides flagged."""
    baseline = str(_param(step, "baseline", "poweredge_r740"))
    rows = sizing_table(ctx.registry, baseline)
    table = Table(
        step.out,
        ("device", "benchmark", "unit", "computed_n", "published_n", "provenance"),
        tuple(
            (
                r["device"],
                r["benchmark"],
                r["unit"],
                r["computed_n"],
                r["published_n"],
                r["provenance"],
            )
            for r in rows
        ),
    )
    return [table], []


def _op_dc_table(step: Step, ctx: RunContext):
    """Datacenter-scale CCI with the PUE multiplier applied."""
    dc_names = _param(step, "datacenters")
    benchmarks = _param(step, "benchmarks")
    months = int(_param(step, "months", 36))
    ci = _ci_param(step)
    rows = []
    for dc_name in dc_names:
        dc = ctx.designs.datacenter(str(dc_name))
        for bench_name in benchmarks:
            result = datacenter_cci(dc, ctx.load, str(bench_name), months * SECONDS_PER_MONTH, ci)
            unit = dc.unit.device.benchmark(str(bench_name)).unit
            rows.append(
                (
                    dc_name,
                    bench_name,
                    unit,
                    result.pue,
                    months,
                    result.c_m,
                    result.c_c,
                    result.c_n,
                    result.cci_mg,
                    "computed",
                )
            )
    table = Table(
        step.out,
        (
            "datacenter",
            "benchmark",
            "unit",
            "pue",
            "lifetime_months",
            "c_m_kg",
            "c_c_kg",
            "c_n_kg",
            "cci_mg",
            "provenance",
        ),
        tuple(rows),
    )
    return [table], []


def _op_query_table(step: Step, ctx: RunContext):
    """Per-query carbon ratios for the hosted application scenarios."""
    names = _param(step, "scenarios")
    rows = []
    with_savings = []
    without_savings = []
    for name in names:
        scenario, design_name = ctx.designs.query_scenario(str(name))
        design = ctx.designs.design(design_name)
        ratio = cluster.query_carbon_comparison(scenario, design, apply_savings=True)
        ratio_plain = cluster.query_carbon_comparison(scenario, design, apply_savings=False)
        rows.append((name, design_name, ratio, ratio_plain, "computed"))
        with_savings.append(ratio)
        without_savings.append(ratio_plain)
    table = Table(
        step.out,
        ("scenario", "design", "ratio_with_scheduling", "ratio_without_scheduling", "provenance"),
        tuple(rows),
    )
    categories = tuple(str(n) for n in names)
    chart = Chart(
        step.out,
        (
            Series("with charge scheduling", tuple(range(len(names))), tuple(with_savings)),
            Series("without charge scheduling", tuple(range(len(names))), tuple(without_savings)),
        ),
        ChartSpec(
            title="Rival vs cluster carbon per query",
            x_label="hosted application",
            y_label="rival carbon / cluster carbon",
            kind="bar",
            categories=categories,
        ),
    )
    return [table], [chart]


def _op_cost_table(step: Step, ctx: RunContext):
    """Deployment cost of owning the cluster vs renting the rival."""
    design = ctx.designs.design(str(_param(step, "design")))
    months = int(_param(step, "months", 36))
    lifetime = months * SECONDS_PER_MONTH
    unit_price = float(_param(step, "unit_price_usd"))
    energy_price = float(_param(step, "energy_price_usd_per_kwh"))
    hourly = float(_param(step, "rental_usd_per_hour"))
    quoted = _param(step, "rental_quoted_usd", None)
    own = cluster.deployment_cost(design, ctx.load, unit_price, energy_price, lifetime)
    rent = cluster.rental_cost(hourly, lifetime)
    rows = [
        (
            f"own {design.name}",
            months,
            own,
            f"{design.n_devices} devices at {_cell(unit_price)} USD plus wall energy "
            f"at {_cell(energy_price)} USD/kWh",
            "computed",
        ),
        (
            "rent rival",
            months,
            rent,
            f"{_cell(hourly)} USD/h",
            "computed",
        ),
    ]
    if quoted is not None:
        delta = abs(rent - float(quoted)) / float(quoted)
        rows.append(
            (
                "rent rival, quoted total",
                months,
                float(quoted),
                f"differs from rate x hours by {delta:.1%}",
                "published-override",
            )
        )
    table = Table(
        step.out,
        ("item", "lifetime_months", "usd", "note", "provenance"),
        tuple(rows),
    )
    return [table], []


OPS = {
    "cci_grid": _op_cci_grid,
    "mix_cci_grid": _op_mix_cci_grid,
    "trace_chart": _op_trace_chart,
    "charge_day": _op_charge_day,
    "cluster_grid": _op_cluster_grid,
    "sizing": _op_sizing,
    "dc_table": _op_dc_table,
    "query_table": _op_query_table,
    "cost_table": _op_cost_table,
}


# --- bundled scenarios ------------------------------------------------

_SYNTH_CA = {
    "start": "2021-04-01",
    "days": 14,
    "seed": 11,
    "tz": "America/Los_Angeles",
}

_DEVICE_MODES = (
    ("poweredge_r740", "new"),
    ("proliant_dl380_g6", "reused"),
    ("thinkpad_x1_g3", "reused"),
    ("pixel_3a", "reused"),
    ("nexus_4", "reused"),
)

_CURVE_BENCHMARKS = ("sgemm", "pdf_render", "dijkstra")


def _bundled() -> dict[str, Scenario]:
    return {
        "fig3": Scenario(
            "fig3",
            "Single-device CCI trends for three benchmarks",
            (
                Step(
                    "cci_grid",
                    "fig3_device_cci",
                    {
                        "devices": _DEVICE_MODES,
                        "benchmarks": _CURVE_BENCHMARKS,
                        "mix": "california",
                    },
                ),
            ),
        ),
        "fig5": Scenario(
            "fig5",
            "Energy mix and CCI for a server and a reused phone",
            (
                Step(
                    "mix_cci_grid",
                    "fig5_energy_mix",
                    {
                        "devices": (("poweredge_r740", "new"), ("pixel_3a", "reused")),
                        "benchmark": "sgemm",
                        "mixes": ("california", "solar", "carbon_free"),
                    },
                ),
            ),
        ),
        "fig6": Scenario(
            "fig6",
            "Carbon-aware charge scheduling over a daily-cycle trace",
            (
                Step("trace_chart", "fig6_trace", {"synth": _SYNTH_CA, "days": 3}),
                Step(
                    "charge_day",
                    "fig6_pixel",
                    {"device": "pixel_3a", "synth": _SYNTH_CA},
                ),
                Step(
                    "charge_day",
                    "fig6_thinkpad",
                    {"device": "thinkpad_x1_g3", "synth": _SYNTH_CA},
                ),
            ),
        ),
        "fig7": Scenario(
            "fig7",
            "Cluster CCI, three benchmarks by two power regimes",
            (
                Step(
                    "cluster_grid",
                    "fig7_cluster_cci",
                    {
                        "designs": (
                            "poweredge_1",
                            "proliant_20",
                            "thinkpad_17",
                            "pixel_54",
                            "nexus_256",
                        ),
                        "benchmarks": _CURVE_BENCHMARKS,
                        "regimes": ("ca", "solar"),
                    },
                ),
            ),
        ),
        "table1": Scenario(
            "table1",
            "Equivalent-cluster sizing against the baseline server",
            (Step("sizing", "table1_sizing", {}),),
        ),
        "table4": Scenario(
            "table4",
            "Datacenter-scale CCI with PUE applied",
            (
                Step(
                    "dc_table",
                    "table4_datacenter_cci",
                    {
                        "datacenters": ("poweredge_hall", "pixel_hall"),
                        "benchmarks": _CURVE_BENCHMARKS,
                        "months": 36,
                        "mix": "california",
                    },
                ),
            ),
        ),
        "fig9": Scenario(
            "fig9",
            "Per-query carbon and cost, hosted applications",
            (
                Step(
                    "query_table",
                    "fig9_query_carbon",
                    {
                        "scenarios": (
                            "hotel_reservation",
                            "social_network_write",
                            "social_network_read",
                        )
                    },
                ),
                Step(
                    "cost_table",
                    "fig9_cost",
                    {
                        "design": "pixel_10_hosting",
                        "months": 36,
                        "unit_price_usd": 70.0,
                        "energy_price_usd_per_kwh": 0.22,
                        "rental_usd_per_hour": 1.53,
                        "rental_quoted_usd": 40404.0,
                    },
                ),
            ),
        ),
    }


def list_scenarios() -> tuple[str, ...]:
    return tuple(sorted(_bundled()))


def bundled_scenario(name: str) -> Scenario:
    scenarios = _bundled()
    if name not in scenarios:
        raise InputError(f"unknown scenario '{name}' (expected one of {sorted(scenarios)})")
    return scenarios[name]
