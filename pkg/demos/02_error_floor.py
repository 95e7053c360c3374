"""Where the outage floor comes from.

A fixed estimation-error variance leaves part of the channel unknown, and
that error term grows with transmit power just as fast as the signal does.
The outage probability therefore settles at a constant and the slope
(diversity order) goes to zero.  If the estimate sharpens with SNR
(variance ``Omega / (1 + delta rho Omega)``) the floor disappears.

The harvester's saturation threshold adds a second effect.  It caps the
transmit power, so with the default cap the curve levels off at a higher
value than the unbounded-power limit predicts.
"""

import numpy as np

from iqirelay import EhConfig, FixedCee, IqiMismatch, NetworkModel, SnrDependentCee
from iqirelay.analytic import diversity_order, op_asymptotic, op_rrs
from iqirelay.energy import db_to_linear

mismatch = IqiMismatch.from_degrees(1.1, 5.0)
r_th = 0.05
fixed = NetworkModel(cee=FixedCee(0.05))
adaptive = NetworkModel(cee=SnrDependentCee(1.0))
no_cap = dict(gamma1=1e12, gamma2=1e12)

print("P_B dB   fixed CEE    adaptive CEE   fixed CEE, capped harvester")
for pb_db in (20, 40, 60, 80):
    pb = float(db_to_linear(pb_db))
    print(
        f"{pb_db:5d}   {op_rrs(fixed, EhConfig(pb=pb, **no_cap), mismatch, r_th):.3e}"
        f"    {op_rrs(adaptive, EhConfig(pb=pb, **no_cap), mismatch, r_th):.3e}"
        f"      {op_rrs(fixed, EhConfig(pb=pb), mismatch, r_th):.3e}"
    )

print("unbounded-power floor  :", f"{op_asymptotic('rrs', fixed, EhConfig(), mismatch, r_th):.3e}")
print("floor with power cap 10:", f"{op_asymptotic('rrs', fixed, EhConfig(), mismatch, r_th, saturated=True):.3e}")

pts = [(db_to_linear(p), op_rrs(fixed, EhConfig(pb=float(db_to_linear(p)), **no_cap), mismatch, r_th)) for p in np.arange(60, 81, 2)]
print(f"diversity order, fixed CEE, 60-80 dB: {diversity_order(pts):.2e}")
