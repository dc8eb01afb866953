"""Closed-form MTTDL for mirrored and r-way replicated data.

The ground truth is :func:`mttdl_exact`, the reciprocal of the summed
double-fault rate built from clamped window probabilities. The regime
formulas (:func:`mttdl_visible_dominant`, :func:`mttdl_latent_dominant`,
:func:`mttdl_long_wov`) are approximations valid only where one quantity
is much smaller than another; each reports the relevant ratios in its
``validity`` diagnostics rather than refusing to run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_UP, Decimal
from typing import NamedTuple

from .model import (
    HOURS_PER_YEAR,
    FaultParams,
    ModelError,
    SystemConfig,
    window_probabilities,
)

EXACT = "exact"
VISIBLE_DOMINANT = "visible_dominant"
LATENT_DOMINANT = "latent_dominant"
LONG_WOV = "long_wov"
REPLICATED = "replicated"
SIMULATION = "simulation"

METHODS = (EXACT, VISIBLE_DOMINANT, LATENT_DOMINANT, LONG_WOV, REPLICATED, SIMULATION)

# "much less than" thresholds for ratio tests
STRONG = 0.01
WEAK = 0.1
# a regime formula is only auto-selected if it lands this close to the exact value
REGIME_AGREEMENT = 0.05


class ConfidenceInterval(NamedTuple):
    low: float
    high: float
    level: float


@dataclass(frozen=True)
class ReliabilityEstimate:
    mttdl_hours: float
    method: str
    validity: tuple[str, ...] = field(default_factory=tuple)
    ci: ConfidenceInterval | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ModelError(f"unknown method {self.method!r}")
        if not self.mttdl_hours > 0:
            raise ModelError(f"MTTDL must be positive, got {self.mttdl_hours}")
        if self.ci is not None and not self.ci.low <= self.mttdl_hours <= self.ci.high:
            raise ModelError("confidence interval does not bracket the estimate")

    @property
    def mttdl_years(self) -> float:
        return self.mttdl_hours / HOURS_PER_YEAR

    @property
    def years_display(self) -> float:
        return round_years(self.mttdl_hours)

    def loss_probability(self, horizon: float) -> float:
        return loss_probability(self, horizon)


def round_years(hours: float) -> float:
    """Years to one decimal, rounding half away from zero."""
    years = hours / HOURS_PER_YEAR
    if not math.isfinite(years):
        return years
    return float(Decimal(repr(years)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


class _Ratio(NamedTuple):
    label: str
    value: float

    @property
    def holds(self) -> bool:
        return self.value < STRONG

    def describe(self) -> str:
        if self.value < STRONG:
            verdict = "holds"
        elif self.value < WEAK:
            verdict = "weak (warning)"
        else:
            verdict = "fails"
        return f"{self.label} {verdict}: ratio {self.value:.3g}"


def _ratio(label, num, den):
    if num == 0:
        value = 0.0
    elif math.isinf(den):
        value = 0.0 if math.isfinite(num) else math.inf
    else:
        value = num / den
    return _Ratio(label, value)


def double_fault_rate(p: FaultParams) -> float:
    """Rate of double faults per hour: clamped window probabilities over occurrence rates."""
    w = window_probabilities(p)
    rate = w.after_visible / p.mv
    if math.isfinite(p.ml):
        rate += w.after_latent / p.ml
    return rate


def _clamp_notes(p):
    w = window_probabilities(p)
    notes = []
    a = p.alpha
    raw_visible = (p.mrv / (a * p.mv)) + (0.0 if math.isinf(p.ml) else p.mrv / (a * p.ml))
    if raw_visible > 1.0:
        notes.append(f"visible window saturated: unclamped P = {raw_visible:.3g}")
    if not p.detected:
        notes.append("latent window saturated: latent faults never detected")
    else:
        lw = p.latent_window
        raw_latent = lw / (a * p.mv) + (0.0 if math.isinf(p.ml) else lw / (a * p.ml))
        if raw_latent > 1.0:
            notes.append(f"latent window saturated: unclamped P = {raw_latent:.3g}")
    if w.after_visible == 0 and w.after_latent == 0:
        notes.append("zero-width windows: no double fault possible")
    return notes


def mttdl_exact(p: FaultParams) -> ReliabilityEstimate:
    rate = double_fault_rate(p)
    mttdl = 1.0 / rate if rate > 0 else math.inf
    return ReliabilityEstimate(mttdl, EXACT, tuple(p.diagnostics() + _clamp_notes(p)))


def mttdl_closed_form(p: FaultParams) -> float:
    """Algebraic MTTDL without clamping.

    alpha * ML^2 * MV^2 / ((MV + ML) * (MRV*ML + (MRL+MDL)*MV)). Agrees with
    :func:`mttdl_exact` only while no window probability saturates.
    """
    if not p.detected:
        raise ModelError("closed form needs a finite detection time")
    mv, ml = p.mv, p.ml
    denom = (mv + ml) * (p.mrv * ml + p.latent_window * mv)
    return p.alpha * ml**2 * mv**2 / denom


def _visible_dominant_ratios(p):
    w = p.latent_window
    return [
        _ratio("MRL+MDL << MV", w, p.mv),
        _ratio("MRV << MV", p.mrv, p.mv),
        _ratio("MV << ML", p.mv, p.ml),
        _ratio("(MRL+MDL)*MV << MRV*ML", w * p.mv, p.mrv * p.ml),
    ]


def _latent_dominant_ratios(p):
    w = p.latent_window
    return [
        _ratio("MRL+MDL << ML", w, p.ml),
        _ratio("MRV << ML", p.mrv, p.ml),
        _ratio("ML << MV", p.ml, p.mv),
        _ratio("MRV*ML << (MRL+MDL)*MV", p.mrv * p.ml, w * p.mv),
    ]


def _long_wov_ratios(p):
    return [
        _ratio("MRV << MV", p.mrv, p.mv),
        _ratio("MV << ML", p.mv, p.ml),
    ]


def _long_wov_extra(p):
    notes = []
    if p.ml < p.mv**2:
        notes.append(f"ML < MV^2 holds: ML/MV^2 = {p.ml / p.mv**2:.3g}")
    else:
        notes.append(f"ML < MV^2 fails: ML/MV^2 = {p.ml / p.mv**2:.3g}")
    notes.append(
        "latent window saturated" if _latent_saturated(p)
        else f"latent window not saturated: (MRL+MDL)/ML = {p.latent_window / p.ml:.3g}"
    )
    return notes


def _latent_saturated(p):
    return not p.detected or p.latent_window >= p.ml


def mttdl_visible_dominant(p: FaultParams) -> ReliabilityEstimate:
    """alpha * MV^2 / MRV, for visible faults much more frequent than latent ones."""
    mttdl = p.alpha * p.mv**2 / p.mrv if p.mrv > 0 else math.inf
    notes = tuple(r.describe() for r in _visible_dominant_ratios(p))
    return ReliabilityEstimate(mttdl, VISIBLE_DOMINANT, notes)


def mttdl_latent_dominant(p: FaultParams) -> ReliabilityEstimate:
    """alpha * ML^2 / (MRL + MDL), for latent faults much more frequent than visible ones."""
    if not p.detected:
        raise ModelError("latent-dominant formula needs a finite detection time (mdl)")
    w = p.latent_window
    mttdl = p.alpha * p.ml**2 / w if w > 0 else math.inf
    notes = tuple(r.describe() for r in _latent_dominant_ratios(p))
    return ReliabilityEstimate(mttdl, LATENT_DOMINANT, notes)


def mttdl_long_wov(p: FaultParams) -> ReliabilityEstimate:
    """alpha * MV^2 / (MRV + MV^2/ML), for a long latent window of vulnerability."""
    latent_term = 0.0 if math.isinf(p.ml) else p.mv**2 / p.ml
    denom = p.mrv + latent_term
    mttdl = p.alpha * p.mv**2 / denom if denom > 0 else math.inf
    notes = tuple(r.describe() for r in _long_wov_ratios(p)) + tuple(_long_wov_extra(p))
    return ReliabilityEstimate(mttdl, LONG_WOV, notes)


def mttdl_replicated(c: SystemConfig) -> ReliabilityEstimate:
    """MV * (alpha*MV/MRV)^(r-1) for r-way replication.

    Only the visible-fault parameters enter. Callers wanting latent faults
    folded in should pass a merged rate, 1/MV' = 1/MV + 1/ML.
    """
    if not isinstance(c, SystemConfig):
        raise ModelError("mttdl_replicated takes a SystemConfig")
    p = c.effective
    notes = [f"r = {c.r}; uses MV, MRV and alpha only"]
    if math.isfinite(p.ml):
        notes.append("latent faults ignored (assumes MDL negligible, similar rates)")
    if p.mrv == 0:
        return ReliabilityEstimate(math.inf, REPLICATED, tuple(notes))
    growth = p.alpha * p.mv / p.mrv
    if growth < 1:
        notes.append(f"alpha*MV/MRV = {growth:.3g} < 1: extra replicas lower the estimate")
    try:
        mttdl = p.mv * growth ** (c.r - 1)
    except OverflowError:
        mttdl = math.inf
    return ReliabilityEstimate(mttdl, REPLICATED, tuple(notes))


def loss_probability(est: ReliabilityEstimate | float, horizon: float) -> float:
    """Probability of data loss within ``horizon`` hours for an exponential lifetime."""
    if horizon < 0:
        raise ModelError(f"horizon must be >= 0, got {horizon}")
    mttdl = est.mttdl_hours if isinstance(est, ReliabilityEstimate) else float(est)
    if math.isinf(mttdl):
        return 0.0
    return -math.expm1(-horizon / mttdl)


def alpha_lower_bound(p: FaultParams) -> float:
    """Smallest plausible alpha: correlated mean time to a second fault >= 10 * MRV."""
    return 10.0 * p.mrv / p.mv


_CANDIDATES = (
    (VISIBLE_DOMINANT, mttdl_visible_dominant, _visible_dominant_ratios),
    (LATENT_DOMINANT, mttdl_latent_dominant, _latent_dominant_ratios),
    (LONG_WOV, mttdl_long_wov, _long_wov_ratios),
)


def _preconditions_hold(name, p):
    if name == LATENT_DOMINANT and not p.detected:
        return False
    ratios = dict((n, f) for n, _, f in _CANDIDATES)[name](p)
    if not all(r.holds for r in ratios):
        return False
    if name == LONG_WOV:
        return p.ml < p.mv**2 and _latent_saturated(p)
    return True


def _rel(a, b):
    if math.isinf(a) and math.isinf(b):
        return 0.0
    return abs(a - b) / b


def select_regime(p: FaultParams) -> ReliabilityEstimate:
    """Pick the first regime formula whose ratio tests all pass, else the exact form.

    Candidates are tried in the order visible-dominant, latent-dominant,
    long-window. A candidate must also agree with the exact value within
    5%; otherwise it is skipped with a diagnostic. The returned estimate
    carries the diagnostics of all four candidates.
    """
    exact = mttdl_exact(p)
    notes = [f"[{EXACT}] " + n for n in exact.validity]
    chosen = None
    for name, fn, _ in _CANDIDATES:
        if name == LATENT_DOMINANT and not p.detected:
            notes.append(f"[{name}] not applicable: latent faults never detected")
            continue
        est = fn(p)
        notes.extend(f"[{name}] " + n for n in est.validity)
        if chosen is not None or not _preconditions_hold(name, p):
            continue
        gap = _rel(est.mttdl_hours, exact.mttdl_hours)
        if gap > REGIME_AGREEMENT:
            notes.append(f"[{name}] rejected: differs from exact value by {gap:.1%}")
            continue
        chosen = est
    if chosen is None:
        chosen = exact
    notes.insert(0, f"selected {chosen.method}")
    return replace(chosen, validity=tuple(notes))


_BY_METHOD = {
    EXACT: mttdl_exact,
    VISIBLE_DOMINANT: mttdl_visible_dominant,
    LATENT_DOMINANT: mttdl_latent_dominant,
    LONG_WOV: mttdl_long_wov,
}


def estimate(c: SystemConfig | FaultParams, method: str = "auto") -> ReliabilityEstimate:
    """Dispatch on a method tag; ``"auto"`` defers to :func:`select_regime`."""
    if method == REPLICATED:
        if not isinstance(c, SystemConfig):
            c = SystemConfig(c)
        return mttdl_replicated(c)
    p = c.effective if isinstance(c, SystemConfig) else c
    if isinstance(c, SystemConfig) and c.r != 2 and method != REPLICATED:
        if method == "auto":
            return mttdl_replicated(c)
        raise ModelError(f"method {method!r} models mirrored data only (r = 2), got r = {c.r}")
    if method == "auto":
        return select_regime(p)
    try:
        fn = _BY_METHOD[method]
    except KeyError:
        raise ModelError(f"unknown method {method!r}") from None
    return fn(p)
