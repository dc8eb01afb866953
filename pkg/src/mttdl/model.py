"""Shared domain types and the elementary fault-probability formulas.

All mean times are in hours. A latent fault that is never proactively
detected is represented by the :data:`UNDETECTED` marker rather than a
large number, so window saturation is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Union

HOURS_PER_YEAR = 8760.0
MINUTES_PER_HOUR = 60.0


class _Undetected:
    """Sentinel for 'latent faults are never proactively detected'."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDETECTED"

    def __reduce__(self):
        return (_Undetected, ())


UNDETECTED = _Undetected()

Detection = Union[float, _Undetected]


class ModelError(ValueError):
    """Raised when a parameter lies outside its domain."""


@dataclass(frozen=True)
class TimeConventions:
    hours_per_year: float = HOURS_PER_YEAR

    def years(self, hours: float) -> float:
        return hours / self.hours_per_year

    def hours(self, years: float) -> float:
        return years * self.hours_per_year


def years_to_hours(years: float) -> float:
    return years * HOURS_PER_YEAR


def hours_to_years(hours: float) -> float:
    return hours / HOURS_PER_YEAR


def _check_mean(name, value, allow_zero):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ModelError(f"{name} must be a number, got {value!r}")
    if math.isnan(value):
        raise ModelError(f"{name} is NaN")
    if allow_zero:
        if value < 0:
            raise ModelError(f"{name} must be >= 0, got {value}")
    elif value <= 0:
        raise ModelError(f"{name} must be > 0, got {value}")


@dataclass(frozen=True)
class FaultParams:
    """Fault and repair parameters for one replica class.

    ``mv``/``ml`` are the mean times to a visible/latent fault, ``mrv``/``mrl``
    the mean repair times, ``mdl`` the mean detection delay of a latent fault
    (or :data:`UNDETECTED`). ``alpha`` in (0, 1] shrinks the mean time to any
    fault that follows a first one. ``math.inf`` is accepted for ``ml`` (no
    latent faults) and for the repair times (repair disabled).
    """

    mv: float
    ml: float
    mrv: float
    mrl: float
    mdl: Detection = UNDETECTED
    alpha: float = 1.0

    def __post_init__(self):
        _check_mean("mv", self.mv, allow_zero=False)
        _check_mean("ml", self.ml, allow_zero=False)
        _check_mean("mrv", self.mrv, allow_zero=True)
        _check_mean("mrl", self.mrl, allow_zero=True)
        if self.mdl is not UNDETECTED:
            _check_mean("mdl", self.mdl, allow_zero=True)
        if isinstance(self.alpha, bool) or not isinstance(self.alpha, (int, float)):
            raise ModelError(f"alpha must be a number, got {self.alpha!r}")
        if not 0.0 < self.alpha <= 1.0:
            raise ModelError(f"alpha must lie in (0, 1], got {self.alpha}")

    @property
    def detected(self) -> bool:
        return self.mdl is not UNDETECTED

    @property
    def latent_window(self) -> float:
        """Mean latent window of vulnerability, MDL + MRL (inf if undetected)."""
        if not self.detected:
            return math.inf
        return self.mdl + self.mrl

    def replace(self, **changes) -> "FaultParams":
        return replace(self, **changes)

    def scaled(self, c: float) -> "FaultParams":
        """All five mean times multiplied by ``c``."""
        mdl = self.mdl * c if self.detected else UNDETECTED
        return replace(self, mv=self.mv * c, ml=self.ml * c, mrv=self.mrv * c,
                       mrl=self.mrl * c, mdl=mdl)

    def diagnostics(self) -> list[str]:
        """Report soft assumptions that hold by less than a factor of 10."""
        notes = []
        if self.mrv * 10 > self.mv:
            notes.append(f"MRV < MV/10 fails: MRV/MV = {self.mrv / self.mv:.3g}")
        w = self.latent_window
        if math.isfinite(w) and w * 10 > self.ml:
            notes.append(f"(MRL+MDL) < ML/10 fails: (MRL+MDL)/ML = {w / self.ml:.3g}")
        return notes


@dataclass(frozen=True)
class ScrubPolicy:
    kind: str = "none"
    period: float | None = None

    def __post_init__(self):
        if self.kind not in ("none", "periodic"):
            raise ModelError(f"unknown scrub policy kind {self.kind!r}")
        if self.kind == "periodic":
            if self.period is None:
                raise ModelError("periodic scrub policy needs a period")
            _check_mean("scrub period", self.period, allow_zero=False)
            if math.isinf(self.period):
                raise ModelError("scrub period must be finite")
        elif self.period is not None:
            raise ModelError("scrub policy 'none' takes no period")

    @classmethod
    def periodic(cls, period: float) -> "ScrubPolicy":
        return cls("periodic", period)

    @classmethod
    def times_per_year(cls, n: float) -> "ScrubPolicy":
        return cls("periodic", HOURS_PER_YEAR / n)

    @property
    def mdl(self) -> Detection:
        """Mean detection latency: half the period, or never."""
        if self.kind == "periodic":
            return self.period / 2.0
        return UNDETECTED


@dataclass(frozen=True)
class SystemConfig:
    """An ``r``-way replicated object with identical replicas.

    When ``scrub`` is given it overrides ``params.mdl`` via the half-period
    rule; :attr:`effective` returns the parameters actually in force.
    """

    params: FaultParams
    r: int = 2
    scrub: ScrubPolicy | None = None
    repair: str = "exponential"

    def __post_init__(self):
        if isinstance(self.r, bool) or not isinstance(self.r, int) or self.r < 2:
            raise ModelError(f"replication degree r must be an integer >= 2, got {self.r!r}")
        if self.repair not in ("exponential", "deterministic"):
            raise ModelError(f"unknown repair distribution {self.repair!r}")

    @property
    def effective(self) -> FaultParams:
        if self.scrub is None:
            return self.params
        return self.params.replace(mdl=self.scrub.mdl)

    @property
    def policy(self) -> ScrubPolicy:
        """Scrub policy in force; derived from ``params.mdl`` when unset.

        A zero ``mdl`` (instant detection) has no periodic equivalent and is
        reported as ``none``; check ``effective.mdl`` to tell the two apart.
        """
        if self.scrub is not None:
            return self.scrub
        if self.params.detected and self.params.mdl > 0:
            return ScrubPolicy.periodic(2.0 * self.params.mdl)
        return ScrubPolicy()


def fault_probability(t: float, mttf: float) -> float:
    """Exponential CDF: probability of a fault within ``t`` hours."""
    if t < 0:
        raise ModelError(f"t must be >= 0, got {t}")
    if not mttf > 0:
        raise ModelError(f"mttf must be > 0, got {mttf}")
    return -math.expm1(-t / mttf)


def fault_probability_linear(t: float, mttf: float) -> float:
    """First-order approximation t/MTTF, saturated at 1."""
    if t < 0:
        raise ModelError(f"t must be >= 0, got {t}")
    if not mttf > 0:
        raise ModelError(f"mttf must be > 0, got {mttf}")
    return min(t / mttf, 1.0)


class WindowProbabilities(NamedTuple):
    """Conditional second-fault probabilities inside a window of vulnerability.

    ``pvv`` is P(visible second | visible first), ``plv`` P(latent | visible),
    ``pvl`` P(visible | latent), ``pll`` P(latent | latent).
    """

    pvv: float
    plv: float
    pvl: float
    pll: float

    @property
    def after_visible(self) -> float:
        return self.pvv + self.plv

    @property
    def after_latent(self) -> float:
        return self.pvl + self.pll


def _ratio(window, mttf):
    if math.isinf(mttf):
        return 0.0
    return window / mttf


def _clamp_pair(a, b):
    s = a + b
    if s > 1.0:
        if math.isinf(s):
            return (1.0, 0.0) if math.isinf(a) and not math.isinf(b) else \
                (0.0, 1.0) if math.isinf(b) and not math.isinf(a) else (0.5, 0.5)
        return a / s, b / s
    return a, b


def _saturated_pair(mv, ml):
    # Split a saturated window in proportion to the two occurrence rates.
    rv, rl = 1.0 / mv, 1.0 / ml
    return rv / (rv + rl), rl / (rv + rl)


def window_probabilities(p: FaultParams) -> WindowProbabilities:
    """Clamped window probabilities, each scaled by 1/alpha.

    Each probability is clamped to [0, 1] and each pair (after a visible,
    after a latent first fault) to a sum of at most 1, keeping the ratio
    between the two members. An undetected latent fault saturates its pair.
    """
    a = p.alpha
    pvv, plv = _clamp_pair(_ratio(p.mrv, a * p.mv), _ratio(p.mrv, a * p.ml))
    if p.detected:
        w = p.mdl + p.mrl
        pvl, pll = _clamp_pair(_ratio(w, a * p.mv), _ratio(w, a * p.ml))
    else:
        pvl, pll = _saturated_pair(p.mv, p.ml)
    return WindowProbabilities(pvv, plv, pvl, pll)
