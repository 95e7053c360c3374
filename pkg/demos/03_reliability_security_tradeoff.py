"""Choosing the harvesting fraction alpha.

A larger alpha buys more harvested energy but leaves less time to transmit,
and each hop must then carry the rate in a shorter slot.  Outage falls and
then rises again.  The eavesdropper sees the mirror image, so the alpha that
minimises outage is close to the one that maximises interception.
"""

import numpy as np

from iqirelay import EhConfig, FixedCee, IqiMismatch, NetworkModel
from iqirelay.analytic import ip_direct, ip_relay, op_ors, op_rrs, op_srs
from iqirelay.energy import db_to_linear

model = NetworkModel(cee=FixedCee(0.05))
mismatch = IqiMismatch.from_degrees(1.1, 5.0)
r_th = 0.05
pb = float(db_to_linear(10))

alphas = np.round(np.arange(0.1, 0.91, 0.05), 3)
rows = []
for a in alphas:
    eh = EhConfig(alpha=float(a), pb=pb)
    rows.append((a, op_rrs(model, eh, mismatch, r_th), op_srs(model, eh, mismatch, r_th), op_ors(model, eh, mismatch, r_th),
                 ip_direct(model, eh, mismatch, r_th), ip_relay(model, eh, mismatch, r_th)))

print(" alpha   OP rrs   OP srs   OP ors   IP dir   IP relay")
for r in rows:
    print(" ".join(f"{x:8.4f}" for x in r))

table = np.array(rows)
print(f"alpha minimising RRS outage : {table[np.argmin(table[:, 1]), 0]:.2f}")
print(f"alpha maximising relay IP   : {table[np.argmax(table[:, 5]), 0]:.2f}")
