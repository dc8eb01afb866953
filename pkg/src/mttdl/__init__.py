"""Reliability of mirrored and replicated long-term storage.

Closed-form mean time to data loss (MTTDL) under visible faults, latent
faults found by scrubbing, and correlated faults, plus a Monte Carlo
simulator to check the formulas against.
"""

from .analytic import (
    ConfidenceInterval,
    ReliabilityEstimate,
    alpha_lower_bound,
    double_fault_rate,
    estimate,
    loss_probability,
    mttdl_closed_form,
    mttdl_exact,
    mttdl_latent_dominant,
    mttdl_long_wov,
    mttdl_replicated,
    mttdl_visible_dominant,
    round_years,
    select_regime,
)
from .drives import (
    DriveSpec,
    cost_ratio,
    expected_bit_errors,
    load_catalog,
    mttf_from_service_life,
    repair_time_from_capacity,
)
from .model import (
    HOURS_PER_YEAR,
    UNDETECTED,
    FaultParams,
    ModelError,
    ScrubPolicy,
    SystemConfig,
    TimeConventions,
    fault_probability,
    fault_probability_linear,
    hours_to_years,
    window_probabilities,
    years_to_hours,
)
from .sim import (
    ReplicaState,
    SimulationResult,
    TrajectoryRecord,
    detection_latency_sample,
    estimate_mttdl,
    simulate_trajectory,
    trajectory_seed,
)

__version__ = "0.1.0"
