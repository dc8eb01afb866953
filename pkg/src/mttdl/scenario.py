"""Scenario files: JSON descriptions of a replicated system to evaluate.

Every time-valued key carries its unit as a suffix (``mv_hours``,
``horizon_years``, ``mrv_minutes``); bare ``mv`` is rejected. A file holds
one scenario object, a list of them, or ``{"catalog": ..., "scenarios": [...]}``.
Example::

    {
      "name": "cheetah-scrubbed",
      "drive": "cheetah",
      "latent_rate_multiple": 5,
      "scrub": {"kind": "periodic", "per_year": 3},
      "alpha": 1.0,
      "method": "latent_dominant",
      "horizon_years": 50,
      "sweep": {"param": "alpha", "values": [1.0, 0.1]}
    }
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field, replace

from . import analytic
from .drives import Catalog, load_catalog, mttf_from_service_life, repair_time_from_capacity
from .model import (
    HOURS_PER_YEAR,
    MINUTES_PER_HOUR,
    UNDETECTED,
    FaultParams,
    ModelError,
    ScrubPolicy,
    SystemConfig,
)

UNIT_FACTORS = {"hours": 1.0, "minutes": 1.0 / MINUTES_PER_HOUR, "years": HOURS_PER_YEAR}
TIME_FIELDS = ("mv", "ml", "mrv", "mrl", "mdl")
SWEEP_PARAMS = ("alpha", "scrub_period", "r", "mdl")
ANALYTIC_METHODS = ("auto", analytic.EXACT, analytic.VISIBLE_DOMINANT,
                    analytic.LATENT_DOMINANT, analytic.LONG_WOV, analytic.REPLICATED)

_SCENARIO_KEYS = {
    "name", "r", "drive", "alpha", "scrub", "method", "repair", "sweep", "annotations",
    "latent_rate_multiple", "mdl",
} | {f"{f}_{u}" for f in TIME_FIELDS + ("horizon",) for u in UNIT_FACTORS}


class ScenarioError(ModelError):
    """A scenario file that cannot be parsed or validated."""


@dataclass(frozen=True)
class Sweep:
    param: str
    values: tuple


@dataclass(frozen=True)
class SweepPoint:
    param: str | None
    value: object
    config: SystemConfig


@dataclass(frozen=True)
class Scenario:
    name: str
    config: SystemConfig
    horizon_years: float
    method: str = "auto"
    sweep: Sweep | None = None
    annotations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def horizon_hours(self) -> float:
        return self.horizon_years * HOURS_PER_YEAR

    def points(self) -> list[SweepPoint]:
        """One configuration per sweep value, in file order; one point if no sweep."""
        if self.sweep is None:
            return [SweepPoint(None, None, self.config)]
        return [SweepPoint(self.sweep.param, v, _apply(self.config, self.sweep.param, v))
                for v in self.sweep.values]


def _apply(c, param, value):
    if param == "alpha":
        return replace(c, params=c.params.replace(alpha=value))
    if param == "r":
        return replace(c, r=value)
    if param == "scrub_period":
        return replace(c, scrub=ScrubPolicy.periodic(value))
    if param == "mdl":
        return replace(c, scrub=None, params=c.params.replace(mdl=value))
    raise ScenarioError(f"cannot sweep {param!r}")


def _fail(where, msg):
    raise ScenarioError(f"{where}: {msg}")


def _number(where, v):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        _fail(where, f"expected a number, got {v!r}")
    return float(v)


def _time(obj, base, where, required=True):
    """Read ``base_<unit>`` from ``obj`` and return hours."""
    hits = [(u, obj[f"{base}_{u}"]) for u in UNIT_FACTORS if f"{base}_{u}" in obj]
    if len(hits) > 1:
        _fail(where, f"{base} given in more than one unit: {[f'{base}_{u}' for u, _ in hits]}")
    if not hits:
        if base in obj:
            _fail(f"{where}.{base}", "units must be explicit, e.g. "
                  f"'{base}_hours' or '{base}_years'")
        if required:
            _fail(where, f"missing {base}_hours or {base}_years")
        return None
    unit, raw = hits[0]
    if raw in ("inf", "infinity"):
        return math.inf
    return _number(f"{where}.{base}_{unit}", raw) * UNIT_FACTORS[unit]


def _scrub(obj, where):
    if not isinstance(obj, dict):
        _fail(where, "expected an object like {\"kind\": \"periodic\", \"period_hours\": 2920}")
    kind = obj.get("kind", "periodic")
    extra = set(obj) - {"kind", "per_year"} - {f"period_{u}" for u in UNIT_FACTORS}
    if extra:
        _fail(where, f"unknown keys {sorted(extra)}")
    if kind == "none":
        if len(obj) > 1:
            _fail(where, "scrub kind 'none' takes no period")
        return ScrubPolicy()
    if kind != "periodic":
        _fail(f"{where}.kind", f"must be 'none' or 'periodic', got {kind!r}")
    period = _time(obj, "period", where, required=False)
    if "per_year" in obj:
        if period is not None:
            _fail(where, "give either per_year or period_<unit>, not both")
        n = _number(f"{where}.per_year", obj["per_year"])
        if n <= 0:
            _fail(f"{where}.per_year", "must be > 0")
        period = HOURS_PER_YEAR / n
    if period is None:
        _fail(where, "periodic scrub needs period_hours, period_years or per_year")
    try:
        return ScrubPolicy.periodic(period)
    except ModelError as exc:
        _fail(where, str(exc))


def _sweep(obj, where):
    if not isinstance(obj, dict):
        _fail(where, "expected {\"param\": ..., \"values\": [...]}")
    extra = set(obj) - {"param", "values", "unit"}
    if extra:
        _fail(where, f"unknown keys {sorted(extra)}")
    param = obj.get("param")
    if param not in SWEEP_PARAMS:
        _fail(f"{where}.param", f"must be one of {list(SWEEP_PARAMS)}, got {param!r}")
    values = obj.get("values")
    if not isinstance(values, list):
        _fail(f"{where}.values", "expected a list")
    out = []
    if param in ("scrub_period", "mdl"):
        unit = obj.get("unit")
        if unit not in UNIT_FACTORS:
            _fail(f"{where}.unit", f"time sweeps need an explicit unit in {list(UNIT_FACTORS)}")
        for i, v in enumerate(values):
            vw = f"{where}.values[{i}]"
            if param == "mdl" and v == "undetected":
                out.append(UNDETECTED)
                continue
            x = _number(vw, v) * UNIT_FACTORS[unit]
            if x < 0 or (param == "scrub_period" and x == 0) or not math.isfinite(x):
                _fail(vw, f"{param} value out of range: {v!r}")
            out.append(x)
    elif param == "alpha":
        for i, v in enumerate(values):
            x = _number(f"{where}.values[{i}]", v)
            if not 0 < x <= 1:
                _fail(f"{where}.values[{i}]", f"alpha must lie in (0, 1], got {v!r}")
            out.append(x)
    else:
        for i, v in enumerate(values):
            if isinstance(v, bool) or not isinstance(v, int) or v < 2:
                _fail(f"{where}.values[{i}]", f"r must be an integer >= 2, got {v!r}")
            out.append(v)
    return Sweep(param, tuple(out)) if out else None


def parse_scenario(obj: dict, where: str = "scenario", catalog: Catalog | None = None) -> Scenario:
    if not isinstance(obj, dict):
        _fail(where, "expected a JSON object")
    unknown = set(obj) - _SCENARIO_KEYS
    if unknown:
        _fail(where, f"unknown keys {sorted(unknown)}")
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        _fail(f"{where}.name", "a non-empty name is required")

    mv = _time(obj, "mv", where, required=False)
    mrv = _time(obj, "mrv", where, required=False)
    mrl = _time(obj, "mrl", where, required=False)
    if "drive" in obj:
        if catalog is None:
            catalog = load_catalog()
        drive = obj["drive"]
        if not isinstance(drive, str) or drive not in catalog:
            _fail(f"{where}.drive", f"unknown drive {drive!r}; catalog has {sorted(catalog)}")
        spec = catalog[drive]
        mv = mttf_from_service_life(spec) if mv is None else mv
        mrv = repair_time_from_capacity(spec) if mrv is None else mrv
        mrl = mrv if mrl is None else mrl
    for key, val in (("mv", mv), ("mrv", mrv), ("mrl", mrl)):
        if val is None:
            _fail(where, f"missing {key}_hours (or a 'drive' reference)")

    ml = _time(obj, "ml", where, required=False)
    if "latent_rate_multiple" in obj:
        if ml is not None:
            _fail(where, "give either ml_<unit> or latent_rate_multiple, not both")
        k = _number(f"{where}.latent_rate_multiple", obj["latent_rate_multiple"])
        if k <= 0:
            _fail(f"{where}.latent_rate_multiple", "must be > 0")
        ml = mv / k
    if ml is None:
        _fail(where, "missing ml_hours, ml_years or latent_rate_multiple")

    if obj.get("mdl") == "undetected":
        mdl = UNDETECTED
        if any(f"mdl_{u}" in obj for u in UNIT_FACTORS):
            _fail(where, "mdl given twice")
    elif "mdl" in obj:
        _fail(f"{where}.mdl", "only the string 'undetected' is allowed here; "
              "use mdl_hours for a number")
    else:
        mdl = _time(obj, "mdl", where, required=False)
        if mdl is None:
            mdl = UNDETECTED

    alpha = _number(f"{where}.alpha", obj.get("alpha", 1.0))
    scrub = _scrub(obj["scrub"], f"{where}.scrub") if "scrub" in obj else None
    if scrub is not None and mdl is not UNDETECTED:
        _fail(where, "give either a scrub policy or mdl_<unit>, not both")

    r = obj.get("r", 2)
    method = obj.get("method", "auto")
    if method not in ANALYTIC_METHODS:
        _fail(f"{where}.method", f"must be one of {list(ANALYTIC_METHODS)}, got {method!r}")
    repair = obj.get("repair", "exponential")
    try:
        params = FaultParams(mv=mv, ml=ml, mrv=mrv, mrl=mrl, mdl=mdl, alpha=alpha)
        config = SystemConfig(params, r=r, scrub=scrub, repair=repair)
    except ModelError as exc:
        _fail(where, str(exc))

    horizon = _time(obj, "horizon", where)
    if horizon < 0 or not math.isfinite(horizon):
        _fail(where, f"horizon must be finite and >= 0, got {horizon}")
    sweep = _sweep(obj["sweep"], f"{where}.sweep") if "sweep" in obj else None

    notes = obj.get("annotations", ())
    if isinstance(notes, str):
        notes = (notes,)
    if not all(isinstance(n, str) for n in notes):
        _fail(f"{where}.annotations", "expected a string or list of strings")

    scenario = Scenario(name, config, horizon / HOURS_PER_YEAR, method, sweep, tuple(notes))
    # surface bad sweep/method combinations before anything runs
    for i, pt in enumerate(scenario.points()):
        if method == analytic.LATENT_DOMINANT and not pt.config.effective.detected:
            _fail(where, f"sweep point {i}: latent_dominant needs a finite detection time")
        if pt.config.r != 2 and method not in ("auto", analytic.REPLICATED):
            _fail(where, f"sweep point {i}: method {method!r} models mirrored data (r = 2) only")
    return scenario


def _decode(text, source):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_scenarios(text: str, source: str = "<scenario>", base_dir: str = ".",
                    catalog: Catalog | None = None) -> list[Scenario]:
    doc = _decode(text, source)
    if isinstance(doc, dict) and "scenarios" in doc:
        extra = set(doc) - {"scenarios", "catalog"}
        if extra:
            raise ScenarioError(f"{source}: unknown top-level keys {sorted(extra)}")
        if "catalog" in doc and catalog is None:
            path = os.path.join(base_dir, doc["catalog"])
            try:
                catalog = load_catalog(path)
            except (OSError, ValueError) as exc:
                raise ScenarioError(f"{source}.catalog: cannot load {path}: {exc}") from None
        items, prefix = doc["scenarios"], "scenarios"
        if not isinstance(items, list):
            raise ScenarioError(f"{source}: 'scenarios' must be a list")
    elif isinstance(doc, list):
        items, prefix = doc, ""
    else:
        items, prefix = [doc], None
    out = []
    for i, item in enumerate(items):
        where = source if prefix is None else f"{source}: {prefix}[{i}]"
        out.append(parse_scenario(item, where, catalog))
    if not out:
        raise ScenarioError(f"{source}: no scenarios")
    return out


def load_scenarios(path: str, catalog: Catalog | None = None) -> list[Scenario]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError(f"{path}: {exc.strerror}") from None
    return parse_scenarios(text, path, os.path.dirname(os.path.abspath(path)), catalog)
