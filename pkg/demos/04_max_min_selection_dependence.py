"""Why max-min selection needs the conditioned formula.

All relays decode the same source, whose transmit power comes from one
harvested beacon.  A weak beacon gain hurts every first hop at once, so the
per-relay outage events are positively correlated.  Multiplying per-relay
outage probabilities ignores that and comes out too optimistic.  Conditioning
on the beacon-to-source gain restores independence and matches simulation.
"""

import math

from iqirelay import EhConfig, FixedCee, IqiMismatch, McConfig, NetworkModel, simulate
from iqirelay.analytic import op_ors, op_ors_exact
from iqirelay.energy import db_to_linear

mismatch = IqiMismatch.from_degrees(1.1, 5.0)
r_th = 0.05
mc = McConfig(trials=500_000, seed=3)

for m in (2, 4):
    model = NetworkModel(relays=m, cee=FixedCee(0.05))
    print(f"M={m}")
    for pb_db in (0, 10, 20, 30):
        eh = EhConfig(pb=float(db_to_linear(pb_db)))
        est = simulate(model, eh, mismatch, r_th, mc, relay_taps=())[("op", "ors")]
        prod, exact = op_ors(model, eh, mismatch, r_th), op_ors_exact(model, eh, mismatch, r_th)
        z = lambda v: (v - est.p_hat) / est.stderr if est.stderr else math.nan
        print(f"  {pb_db:2d} dB  MC {est.p_hat:.5f}   product {prod:.5f} (z={z(prod):+6.1f})   conditioned {exact:.5f} (z={z(exact):+5.1f})")
