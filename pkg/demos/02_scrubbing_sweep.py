"""
How often to scrub
==================

Sweep the scrub period for a mirrored pair of enterprise drives and watch
MTTDL climb as latent faults get caught sooner.
"""

import numpy as np

from mttdl import FaultParams, ScrubPolicy, estimate, load_catalog
from mttdl.drives import mttf_from_service_life, repair_time_from_capacity

cheetah = load_catalog()["cheetah"]
mv = mttf_from_service_life(cheetah)
mrv = repair_time_from_capacity(cheetah)
print(f"Cheetah: MTTF {mv:.3g} h, full-drive copy {mrv * 60:.1f} min")

# latent faults assumed five times as frequent as whole-drive failures
base = FaultParams(mv=mv, ml=mv / 5, mrv=mrv, mrl=mrv)

print(f"{'scrubs/yr':>10} {'MDL (h)':>10} {'MTTDL (y)':>12}  method")
for per_year in (0.5, 1, 3, 12, 52, 365):
    p = base.replace(mdl=ScrubPolicy.times_per_year(per_year).mdl)
    est = estimate(p)
    print(f"{per_year:>10g} {p.mdl:>10.1f} {est.mttdl_years:>12.1f}  {est.method}")

# diminishing returns: once MDL is small next to MRL the repair dominates
periods = np.geomspace(8760, 1, 9)
years = [estimate(base.replace(mdl=t / 2)).mttdl_years for t in periods]
print("gain from each halving of the period:",
      np.round(np.array(years[1:]) / np.array(years[:-1]), 2))
