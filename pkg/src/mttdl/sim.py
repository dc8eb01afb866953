"""Discrete-event Monte Carlo simulation of an r-replica object.

Each replica is a small state machine::

    HEALTHY --visible fault--> VISIBLE_REPAIR --repair--> HEALTHY
    HEALTHY --latent fault--> LATENT_UNDETECTED --detection--> LATENT_REPAIR --repair--> HEALTHY

Only healthy replicas accrue faults, at rates 1/MV and 1/ML. While any
replica is non-healthy, every healthy replica's rates are multiplied by
1/alpha. The multiplier is constant: it does not compound with the number
of faulty replicas. Compounding (alpha**-k with k faulty replicas) was
rejected because it does not reproduce the (MRV/(alpha*MV))**(r-1)
product used for r-way replication. Data is lost when all r replicas are
non-healthy at once; an undetected latent fault counts as non-healthy.

Scrubs are not simulated as events. The delay from a latent fault to its
detection is drawn directly, uniform over one scrub period, which has the
same distribution as the gap to the next scrub for a memoryless fault.

Randomness: trajectory ``i`` of a run seeded with ``master_seed`` uses the
64-bit seed ``SeedSequence(master_seed, spawn_key=(i,)).generate_state(1,
uint64)[0]`` fed to :func:`numpy.random.default_rng` (PCG64). Outcomes
depend only on that seed, so results do not change with the number of
worker processes.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import IntEnum
from typing import NamedTuple

import numpy as np
from scipy import stats

from .analytic import SIMULATION, ConfidenceInterval, ReliabilityEstimate
from .model import ModelError, ScrubPolicy, SystemConfig

NEVER = math.inf

EVENT_KINDS = ("visible_fault", "latent_fault", "detection", "repair_complete", "data_loss")


class ReplicaState(IntEnum):
    HEALTHY = 0
    VISIBLE_REPAIR = 1
    LATENT_UNDETECTED = 2
    LATENT_REPAIR = 3


class Event(NamedTuple):
    time: float
    replica: int
    kind: str


@dataclass(frozen=True)
class TrajectoryRecord:
    seed: int
    outcome: float
    events: tuple[Event, ...] = ()
    counts: dict = field(default_factory=dict, compare=False)

    def to_ndjson(self) -> str:
        """One JSON object per event, newline-delimited."""
        lines = [
            json.dumps({"seed": self.seed, "time_hours": e.time, "replica": e.replica,
                        "kind": e.kind})
            for e in self.events
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    def write_ndjson(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_ndjson())


@dataclass(frozen=True)
class SimulationResult:
    n_trajectories: int
    mean_hours: float
    std_dev: float
    std_error: float
    ci: ConfidenceInterval
    counts: dict
    master_seed: int

    def interval(self, level: float) -> ConfidenceInterval:
        """Student-t interval on the mean at another confidence level."""
        return _interval(self.mean_hours, self.std_error, self.n_trajectories, level)

    def to_estimate(self) -> ReliabilityEstimate:
        notes = (f"n = {self.n_trajectories}", f"master_seed = {self.master_seed}",
                 f"std error = {self.std_error:.6g} h")
        return ReliabilityEstimate(self.mean_hours, SIMULATION, notes, self.ci)


def _interval(mean, se, n, level):
    if not 0 < level < 1:
        raise ModelError(f"confidence level must lie in (0, 1), got {level}")
    half = float(stats.t.ppf(0.5 + level / 2.0, n - 1)) * se
    return ConfidenceInterval(max(mean - half, 0.0), mean + half, float(level))


class _Uniforms:
    """Buffered U[0, 1) draws from a numpy Generator, consumed in order."""

    __slots__ = ("_rng", "_buf", "_i")

    def __init__(self, rng, block=256):
        self._rng = rng
        self._buf = rng.random(block).tolist()
        self._i = 0

    def __call__(self):
        i = self._i
        if i == len(self._buf):
            self._buf = self._rng.random(len(self._buf)).tolist()
            i = 0
        self._i = i + 1
        return self._buf[i]


def detection_latency_sample(policy: ScrubPolicy, fault_time: float, rng) -> float:
    """Hours from a latent fault until the next scrub finds it.

    Uniform on [0, period) regardless of ``fault_time``; :data:`NEVER` when
    the policy does no scrubbing. ``rng`` is a numpy Generator or any
    zero-argument callable returning U[0, 1) floats.
    """
    if policy.kind == "none":
        return NEVER
    u = rng() if callable(rng) else rng.random()
    return u * policy.period


def _exp(u, mean):
    # inverse-CDF exponential; 1 - u lies in (0, 1]
    if math.isinf(mean):
        return NEVER
    return -mean * math.log(1.0 - u)


def _simulate(c: SystemConfig, seed: int, record: bool):
    p = c.effective
    if math.isinf(p.mv) and math.isinf(p.ml):
        raise ModelError("no fault process: both MV and ML are infinite")
    r = c.r
    inv_alpha = 1.0 / p.alpha
    rate_v = 1.0 / p.mv
    rate_l = 0.0 if math.isinf(p.ml) else 1.0 / p.ml
    per_replica = rate_v + rate_l
    p_visible = rate_v / per_replica
    deterministic = c.repair == "deterministic"
    mrv, mrl = p.mrv, p.mrl
    policy = c.policy
    instant_detection = p.detected and p.mdl == 0

    u = _Uniforms(np.random.default_rng(seed))
    state = [ReplicaState.HEALTHY] * r
    due = [NEVER] * r
    healthy = r
    t = 0.0
    events = []
    counts = Counter()

    def repair_time(mean):
        return mean if deterministic else _exp(u(), mean)

    while True:
        rate = healthy * per_replica
        if healthy < r:
            rate *= inv_alpha
        next_due = min(due)
        t_fault = t + _exp(u(), 1.0 / rate)
        if t_fault < next_due:
            t = t_fault
            # pick the k-th healthy replica
            k = int(u() * healthy)
            i = -1
            for j in range(r):
                if state[j] == ReplicaState.HEALTHY:
                    if k == 0:
                        i = j
                        break
                    k -= 1
            healthy -= 1
            if u() < p_visible:
                kind = "visible_fault"
                state[i] = ReplicaState.VISIBLE_REPAIR
                due[i] = t + repair_time(mrv)
            else:
                kind = "latent_fault"
                state[i] = ReplicaState.LATENT_UNDETECTED
                if instant_detection:
                    due[i] = t
                else:
                    due[i] = t + detection_latency_sample(policy, t, u)
            counts[kind] += 1
            if record:
                events.append(Event(t, i, kind))
            if healthy == 0:
                counts["data_loss"] += 1
                if record:
                    events.append(Event(t, i, "data_loss"))
                return t, events, counts
        else:
            t = next_due
            i = due.index(next_due)
            if state[i] == ReplicaState.LATENT_UNDETECTED:
                kind = "detection"
                state[i] = ReplicaState.LATENT_REPAIR
                due[i] = t + repair_time(mrl)
            else:
                kind = "repair_complete"
                state[i] = ReplicaState.HEALTHY
                due[i] = NEVER
                healthy += 1
            counts[kind] += 1
            if record:
                events.append(Event(t, i, kind))


def simulate_trajectory(c: SystemConfig, seed: int, record: bool = True) -> TrajectoryRecord:
    """Run one trajectory until data loss.

    Identical ``(c, seed)`` always give an identical record. With
    ``record=False`` the event list is left empty (counts are kept).
    """
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ModelError(f"seed must be a 64-bit unsigned integer, got {seed}")
    outcome, events, counts = _simulate(c, seed, record)
    return TrajectoryRecord(seed, outcome, tuple(events), dict(counts))


def trajectory_seed(master_seed: int, index: int) -> int:
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(int(index),))
    return int(ss.generate_state(1, np.uint64)[0])


def _run_chunk(c, master_seed, start, stop):
    outcomes = []
    counts = Counter()
    for i in range(start, stop):
        outcome, _, cnt = _simulate(c, trajectory_seed(master_seed, i), False)
        outcomes.append(outcome)
        counts.update(cnt)
    return outcomes, counts


def estimate_mttdl(c: SystemConfig, n: int, master_seed: int = 0,
                   confidence: float = 0.95, workers: int = 1) -> SimulationResult:
    """Empirical MTTDL over ``n`` independent trajectories.

    The result is bit-identical for a given ``(c, n, master_seed,
    confidence)`` whatever ``workers`` is: trajectories are seeded by index
    and outcomes are folded in index order.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise ModelError(f"need at least 2 trajectories for an interval, got {n!r}")
    if not 0 < confidence < 1:
        raise ModelError(f"confidence level must lie in (0, 1), got {confidence}")
    n = int(n)
    workers = max(1, int(workers))
    if workers == 1:
        outcomes, counts = _run_chunk(c, master_seed, 0, n)
    else:
        bounds = np.linspace(0, n, min(n, workers * 4) + 1).astype(int)
        outcomes, counts = [], Counter()
        with ProcessPoolExecutor(workers) as pool:
            futures = [pool.submit(_run_chunk, c, master_seed, int(a), int(b))
                       for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
            for fut in futures:
                o, cnt = fut.result()
                outcomes.extend(o)
                counts.update(cnt)
    x = np.asarray(outcomes)
    mean = math.fsum(outcomes) / n
    sd = float(np.sqrt(math.fsum(((x - mean) ** 2).tolist()) / (n - 1)))
    se = sd / math.sqrt(n)
    ci = _interval(mean, se, n, confidence)
    all_counts = {k: counts.get(k, 0) for k in EVENT_KINDS}
    return SimulationResult(n, mean, sd, se, ci, all_counts, int(master_seed))
