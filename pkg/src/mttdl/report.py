"""Report rows for analytic, simulated and compared runs, plus CSV/JSON output."""

from __future__ import annotations

import csv
import io
import json
import math

from . import analytic
from .analytic import loss_probability, round_years
from .model import HOURS_PER_YEAR
from .scenario import Scenario
from .sim import estimate_mttdl

COLUMNS = (
    "scenario", "sweep_param", "sweep_value", "r",
    "mv_hours", "ml_hours", "mrv_hours", "mrl_hours", "mdl_hours", "alpha",
    "method", "mttdl_hours", "mttdl_years", "loss_prob_horizon",
    "ci_low_hours", "ci_high_hours", "n_trajectories", "verdict",
)
EXTRA_COLUMNS = (
    "horizon_years", "seed", "analytic_mttdl_hours", "sim_mttdl_hours", "rel_diff",
    "diagnostics", "summary",
)
ALL_COLUMNS = COLUMNS + EXTRA_COLUMNS

DEFAULT_TOLERANCE = 0.10
SIG_DIGITS = 15


def _base_row(scenario: Scenario, point) -> dict:
    p = point.config.effective
    sweep_value = point.value
    if sweep_value is not None and not isinstance(sweep_value, (int, float)):
        sweep_value = "undetected"
    row = dict.fromkeys(ALL_COLUMNS)
    row.update(
        scenario=scenario.name,
        sweep_param=point.param,
        sweep_value=sweep_value,
        r=point.config.r,
        mv_hours=p.mv, ml_hours=p.ml, mrv_hours=p.mrv, mrl_hours=p.mrl,
        mdl_hours=p.mdl if p.detected else "undetected",
        alpha=p.alpha,
        horizon_years=scenario.horizon_years,
    )
    return row


def _summary(mttdl_hours, loss, horizon_years):
    return (f"MTTDL {round_years(mttdl_hours):.1f} years; "
            f"{loss * 100:.1f}% loss in {horizon_years:g} years")


def run_analytic(scenarios: list[Scenario]) -> list[dict]:
    """One row per sweep point with the closed-form MTTDL and horizon loss probability."""
    rows = []
    for sc in scenarios:
        for pt in sc.points():
            est = analytic.estimate(pt.config, sc.method)
            row = _base_row(sc, pt)
            loss = loss_probability(est, sc.horizon_hours)
            row.update(
                method=est.method,
                mttdl_hours=est.mttdl_hours,
                mttdl_years=est.mttdl_hours / HOURS_PER_YEAR,
                loss_prob_horizon=loss,
                analytic_mttdl_hours=est.mttdl_hours,
                diagnostics="; ".join(est.validity),
                summary=_summary(est.mttdl_hours, loss, sc.horizon_years),
            )
            rows.append(row)
    return rows


def run_simulate(scenarios: list[Scenario], n: int, master_seed: int,
                 confidence: float = 0.95, workers: int = 1) -> list[dict]:
    """One row per sweep point with the Monte Carlo mean and its confidence interval."""
    rows = []
    for sc in scenarios:
        for pt in sc.points():
            res = estimate_mttdl(pt.config, n, master_seed, confidence, workers)
            row = _base_row(sc, pt)
            loss = loss_probability(res.mean_hours, sc.horizon_hours)
            row.update(
                method=analytic.SIMULATION,
                mttdl_hours=res.mean_hours,
                mttdl_years=res.mean_hours / HOURS_PER_YEAR,
                loss_prob_horizon=loss,
                ci_low_hours=res.ci.low,
                ci_high_hours=res.ci.high,
                n_trajectories=res.n_trajectories,
                seed=master_seed,
                sim_mttdl_hours=res.mean_hours,
                diagnostics=f"std error {res.std_error:.6g} h; {confidence:.0%} CI; "
                            + ", ".join(f"{k}={v}" for k, v in res.counts.items()),
                summary=_summary(res.mean_hours, loss, sc.horizon_years),
            )
            rows.append(row)
    return rows


def verdict(analytic_hours, ci_low, ci_high, sim_hours, tolerance):
    if math.isinf(analytic_hours):
        return "FAIL", math.inf
    rel = abs(sim_hours - analytic_hours) / analytic_hours
    ok = rel <= tolerance or ci_low <= analytic_hours <= ci_high
    return ("PASS" if ok else "FAIL"), rel


def run_compare(scenarios: list[Scenario], n: int, master_seed: int,
                tolerance: float = DEFAULT_TOLERANCE, confidence: float = 0.95,
                workers: int = 1) -> list[dict]:
    """Join analytic and simulated rows per sweep point and judge agreement.

    A row PASSes when the relative difference is within ``tolerance`` or the
    simulation's confidence interval contains the analytic value.
    """
    a_rows = run_analytic(scenarios)
    s_rows = run_simulate(scenarios, n, master_seed, confidence, workers)
    rows = []
    for a, s in zip(a_rows, s_rows):
        v, rel = verdict(a["mttdl_hours"], s["ci_low_hours"], s["ci_high_hours"],
                         s["mttdl_hours"], tolerance)
        row = dict(a)
        row.update(
            ci_low_hours=s["ci_low_hours"], ci_high_hours=s["ci_high_hours"],
            n_trajectories=s["n_trajectories"], seed=s["seed"],
            sim_mttdl_hours=s["mttdl_hours"], rel_diff=rel, verdict=v,
            diagnostics=a["diagnostics"] + " | sim: " + s["diagnostics"],
            summary=(a["summary"] + f" | sim {round_years(s['mttdl_hours']):.1f} years"
                     f" | {v} ({rel:.1%} apart, tolerance {tolerance:.0%})"),
        )
        rows.append(row)
    return rows


def _cell(v):
    """Normalise one value: 15 significant digits, non-finite floats as strings."""
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return float(f"{v:.{SIG_DIGITS}g}")
    return v


def normalise(rows):
    return [{k: _cell(row.get(k)) for k in ALL_COLUMNS} for row in rows]


def to_json(rows) -> str:
    return json.dumps(normalise(rows), indent=2) + "\n"


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=ALL_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in normalise(rows):
        w.writerow({k: ("" if v is None else (f"{v:.{SIG_DIGITS}g}" if isinstance(v, float) else v))
                    for k, v in row.items()})
    return buf.getvalue()


def render(rows, fmt: str) -> str:
    if fmt == "json":
        return to_json(rows)
    if fmt == "csv":
        return to_csv(rows)
    raise ValueError(f"unknown format {fmt!r}")


def read_csv(text: str) -> list[dict]:
    """Parse :func:`to_csv` output back into typed rows (numbers as floats/ints)."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        parsed = {}
        for k, v in row.items():
            if v == "":
                parsed[k] = None
                continue
            try:
                parsed[k] = int(v)
            except ValueError:
                try:
                    f = float(v)
                    parsed[k] = v if math.isnan(f) or math.isinf(f) else f
                except ValueError:
                    parsed[k] = v
        out.append(parsed)
    return out


def format_table(rows) -> str:
    """Human-readable summary at 6 significant digits."""
    lines = []
    for row in rows:
        label = row["scenario"]
        if row["sweep_param"]:
            label += f" [{row['sweep_param']}={_six(row['sweep_value'])}]"
        mttdl = _six(row["mttdl_hours"])
        extra = f"  verdict={row['verdict']}" if row.get("verdict") else ""
        lines.append(f"{label}: {row['method']} MTTDL {mttdl} h | {row['summary']}{extra}")
    return "\n".join(lines)


def _six(v):
    return f"{v:.6g}" if isinstance(v, float) else str(v)
