"""
Mirrored disks with and without scrubbing
=========================================

Two copies of the data on drives with a 1.4 million hour mean time to a
visible fault, latent faults five times as often, and 20 minute repairs.
"""

from mttdl import FaultParams, ScrubPolicy, estimate, loss_probability
from mttdl.analytic import alpha_lower_bound, mttdl_latent_dominant, mttdl_long_wov

YEAR = 8760.0
base = FaultParams(mv=1.4e6, ml=2.8e5, mrv=1 / 3, mrl=1 / 3)

# Without scrubbing a latent fault is never found, so its window of
# vulnerability covers everything that follows.
est = estimate(base)
print(f"no scrub: {est.years_display} years, "
      f"{loss_probability(est, 50 * YEAR):.1%} chance of loss in 50 years")
for note in est.validity:
    print("   ", note)

# Scrubbing three times a year caps the latent window at half a period.
scrubbed = base.replace(mdl=ScrubPolicy.times_per_year(3).mdl)
for alpha in (1.0, 0.1):
    est = mttdl_latent_dominant(scrubbed.replace(alpha=alpha))
    print(f"scrub 3/yr, alpha={alpha}: {est.years_display} years, "
          f"{loss_probability(est, 50 * YEAR):.1%} in 50 years")

# Rare latent faults, no scrubbing: the long-window approximation applies.
est = mttdl_long_wov(base.replace(ml=1.4e7, alpha=0.1))
print(f"rare latent faults: {est.years_display} years")

# How strong can correlation get before the mirror stops helping at all?
print(f"alpha must stay above about {alpha_lower_bound(base):.0e}")
