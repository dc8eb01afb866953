"""Drive specifications and the economics derived from them.

Capacities are bytes, rates bytes/second, service lives years. The bundled
catalog (``data/drives.json``) lists a consumer and an enterprise drive;
``effective_recovery_rate`` is the rate at which a failed replica is
actually rebuilt, which can be well below the interface bandwidth.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass
from importlib import resources

from .model import HOURS_PER_YEAR, ModelError

SECONDS_PER_HOUR = 3600.0
SECONDS_PER_YEAR = 365 * 86400.0
BITS_PER_BYTE = 8


@dataclass(frozen=True)
class Cost:
    amount: float
    currency: str = "USD"


@dataclass(frozen=True)
class DriveSpec:
    name: str
    capacity: float
    sustained_bandwidth: float
    ber: float
    service_life: float
    service_life_failure_prob: float
    unit_cost: Cost
    effective_recovery_rate: float | None = None
    description: str = ""

    def __post_init__(self):
        for attr in ("capacity", "sustained_bandwidth", "ber", "service_life"):
            v = getattr(self, attr)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or math.isnan(v) or v < 0:
                raise ModelError(f"{self.name}: {attr} must be a non-negative number, got {v!r}")
        if self.sustained_bandwidth <= 0 or self.service_life <= 0:
            raise ModelError(f"{self.name}: bandwidth and service life must be positive")
        if self.effective_recovery_rate is not None and not self.effective_recovery_rate > 0:
            raise ModelError(f"{self.name}: effective_recovery_rate must be positive")
        if not 0 <= self.service_life_failure_prob <= 1:
            raise ModelError(f"{self.name}: service_life_failure_prob must lie in [0, 1]")
        if not self.unit_cost.amount > 0:
            raise ModelError(f"{self.name}: unit cost must be positive")

    @property
    def recovery_rate(self) -> float:
        return self.effective_recovery_rate or self.sustained_bandwidth

    @property
    def cost_per_byte(self) -> float:
        return self.unit_cost.amount / self.capacity

    @property
    def cost_per_gb(self) -> float:
        return self.cost_per_byte * 1e9

    @classmethod
    def from_dict(cls, d: dict) -> "DriveSpec":
        d = dict(d)
        cost = d.pop("unit_cost")
        if isinstance(cost, dict):
            cost = Cost(float(cost["amount"]), cost.get("currency", "USD"))
        else:
            cost = Cost(float(cost))
        return cls(unit_cost=cost, **d)

    def to_dict(self) -> dict:
        return asdict(self)


def mttf_from_service_life(spec: DriveSpec) -> float:
    """Mean time to a visible fault (hours) implied by the service-life failure probability."""
    p = spec.service_life_failure_prob
    if p >= 1:
        raise ModelError(f"{spec.name}: failure probability {p} >= 1 gives no finite MTTF")
    if p == 0:
        warnings.warn(f"{spec.name}: zero failure probability, MTTF is unbounded",
                      RuntimeWarning, stacklevel=2)
        return math.inf
    return -(spec.service_life * HOURS_PER_YEAR) / math.log1p(-p)


def repair_time_from_capacity(spec: DriveSpec, rate: float | None = None) -> float:
    """Hours to copy a full drive at ``rate`` (default: the effective recovery rate)."""
    rate = spec.recovery_rate if rate is None else rate
    if not rate > 0:
        raise ModelError(f"recovery rate must be positive, got {rate}")
    return spec.capacity / rate / SECONDS_PER_HOUR


def expected_bit_errors(spec: DriveSpec, duty_cycle: float, lifetime: float,
                        transfer_rate: float) -> float:
    """Expected irrecoverable bit errors over ``lifetime`` years of reading.

    ``duty_cycle`` is the busy fraction, ``transfer_rate`` bytes/second while busy.
    """
    if not 0 <= duty_cycle <= 1:
        raise ModelError(f"duty_cycle must lie in [0, 1], got {duty_cycle}")
    bits_read = BITS_PER_BYTE * transfer_rate * duty_cycle * lifetime * SECONDS_PER_YEAR
    return spec.ber * bits_read


def cost_ratio(a: DriveSpec, b: DriveSpec) -> float:
    """Per-byte cost of ``a`` relative to ``b``."""
    if a.unit_cost.currency != b.unit_cost.currency:
        raise ModelError(f"cannot compare {a.unit_cost.currency} with {b.unit_cost.currency}")
    return a.cost_per_byte / b.cost_per_byte


class Catalog(dict):
    """Drive specs keyed by lower-cased name."""

    def __getitem__(self, name):
        try:
            return super().__getitem__(name.lower())
        except KeyError:
            raise KeyError(f"unknown drive {name!r}; catalog has {sorted(self)}") from None

    def __contains__(self, name):
        return super().__contains__(name.lower())


def parse_catalog(text: str) -> Catalog:
    entries = json.loads(text)
    if not isinstance(entries, list):
        raise ModelError("drive catalog must be a JSON array of drive objects")
    cat = Catalog()
    for i, entry in enumerate(entries):
        try:
            spec = DriveSpec.from_dict(entry)
        except (TypeError, KeyError) as exc:
            raise ModelError(f"catalog entry [{i}]: {exc}") from None
        cat[spec.name.lower()] = spec
    return cat


def load_catalog(path=None) -> Catalog:
    """Load a catalog file, or the bundled one when ``path`` is None."""
    if path is None:
        text = resources.files("mttdl").joinpath("data/drives.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_catalog(text)


def dump_catalog(catalog) -> str:
    return json.dumps([s.to_dict() for s in catalog.values()], indent=2)
