"""
Cheap disks or expensive ones
=============================

Price per byte against reliability for the two bundled drives.
"""

from mttdl import FaultParams, ScrubPolicy, estimate, load_catalog
from mttdl.drives import (
    cost_ratio,
    expected_bit_errors,
    mttf_from_service_life,
    repair_time_from_capacity,
)

cat = load_catalog()
cheap, dear = cat["barracuda"], cat["cheetah"]
print(f"{dear.name} costs {cost_ratio(dear, cheap):.1f}x more per byte than {cheap.name}")

for spec in (cheap, dear):
    mv = mttf_from_service_life(spec)
    mrv = repair_time_from_capacity(spec)
    errors = expected_bit_errors(spec, 0.01, spec.service_life, spec.sustained_bandwidth)
    p = FaultParams(mv=mv, ml=mv / 5, mrv=mrv, mrl=mrv,
                    mdl=ScrubPolicy.times_per_year(3).mdl)
    est = estimate(p)
    print(f"{spec.name:>10}: MTTF {mv:9.3g} h, copy {mrv * 60:5.1f} min, "
          f"{errors:4.1f} bit errors over life at 1% duty, "
          f"mirrored+scrubbed MTTDL {est.mttdl_years:9.0f} y")

# Three cheap copies against two expensive ones, same scrub policy.
from mttdl import SystemConfig

mv = mttf_from_service_life(cheap)
mrv = repair_time_from_capacity(cheap)
three = SystemConfig(FaultParams(mv=mv, ml=float("inf"), mrv=mrv, mrl=mrv, alpha=0.5), r=3)
print(f"three barracudas (visible faults only, alpha 0.5): {estimate(three).mttdl_years:.3g} y")
