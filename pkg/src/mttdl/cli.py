"""Command-line entry point.

Exit codes: 0 success, 1 validation or parse error, 2 a comparison row FAILed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import report
from .drives import load_catalog, mttf_from_service_life, repair_time_from_capacity
from .model import ModelError
from .scenario import load_scenarios

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_DISAGREE = 2


def _common(p, scenario_required=True):
    p.add_argument("--scenario", required=scenario_required, help="scenario JSON file")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _sim_options(p):
    p.add_argument("--trajectories", "-n", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                   help="worker processes (results do not depend on this)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mttdl", description="MTTDL for mirrored and replicated storage")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="closed-form MTTDL per sweep point")
    _common(p)

    p = sub.add_parser("simulate", help="Monte Carlo MTTDL per sweep point")
    _common(p)
    _sim_options(p)

    p = sub.add_parser("compare", help="analytic vs simulated MTTDL with PASS/FAIL verdicts")
    _common(p)
    _sim_options(p)
    p.add_argument("--tolerance", type=float, default=report.DEFAULT_TOLERANCE,
                   help="relative tolerance for PASS (default 0.10)")

    p = sub.add_parser("catalog", help="drive catalog")
    csub = p.add_subparsers(dest="catalog_command", required=True)
    show = csub.add_parser("show", help="list drives with derived MTTF and repair time")
    _common(show, scenario_required=False)
    show.add_argument("--catalog", help="catalog JSON file (default: bundled catalog)")
    return parser


def catalog_rows(catalog) -> list[dict]:
    rows = []
    for spec in catalog.values():
        rows.append({
            "name": spec.name,
            "capacity_bytes": spec.capacity,
            "sustained_bandwidth": spec.sustained_bandwidth,
            "effective_recovery_rate": spec.recovery_rate,
            "ber": spec.ber,
            "service_life_years": spec.service_life,
            "service_life_failure_prob": spec.service_life_failure_prob,
            "unit_cost": spec.unit_cost.amount,
            "currency": spec.unit_cost.currency,
            "cost_per_gb": spec.cost_per_gb,
            "mttf_hours": mttf_from_service_life(spec),
            "mrv_hours": repair_time_from_capacity(spec),
        })
    return rows


def _render_plain(rows, fmt):
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _catalog_for(args):
    if args.catalog:
        return load_catalog(args.catalog)
    if args.scenario:
        with open(args.scenario) as fh:
            doc = json.load(fh)
        if isinstance(doc, dict) and "catalog" in doc:
            base = os.path.dirname(os.path.abspath(args.scenario))
            return load_catalog(os.path.join(base, doc["catalog"]))
    return load_catalog()


def _emit(text, out, table=None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
        if table:
            print(table)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            rows = catalog_rows(_catalog_for(args))
            _emit(_render_plain(rows, args.format), args.out)
            return EXIT_OK

        scenarios = load_scenarios(args.scenario)
        if args.command == "analytic":
            rows = report.run_analytic(scenarios)
        elif args.command == "simulate":
            rows = report.run_simulate(scenarios, args.trajectories, args.seed,
                                       args.confidence, args.workers)
        else:
            rows = report.run_compare(scenarios, args.trajectories, args.seed,
                                      args.tolerance, args.confidence, args.workers)
    except (ModelError, KeyError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    _emit(report.render(rows, args.format), args.out, report.format_table(rows))
    if any(r.get("verdict") == "FAIL" for r in rows):
        return EXIT_DISAGREE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
