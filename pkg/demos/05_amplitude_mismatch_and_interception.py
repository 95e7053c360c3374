"""Intercept probability against the I/Q amplitude mismatch.

The mismatch model splits the signal into a direct term with power gain
``p`` and an image term with gain ``q``.  As xi grows from 1, ``p`` grows
faster than the image leakage ``q`` at these operating points.  The
eavesdropper's SINR therefore improves, so larger amplitude mismatch here
*raises* the intercept probability.  Phase mismatch lowers it.
"""

import numpy as np

from iqirelay import EhConfig, FixedCee, IqiMismatch, NetworkModel
from iqirelay.analytic import ip_direct, ip_relay
from iqirelay.energy import db_to_linear
from iqirelay.iqi import gains_from_mismatch

model = NetworkModel(cee=FixedCee(0.05))
eh = EhConfig(pb=float(db_to_linear(10)))
r_th = 0.05

for phi in (0, 20, 40):
    print(f"phi = {phi} deg")
    for xi in np.arange(1.0, 1.51, 0.1):
        m = IqiMismatch.from_degrees(float(xi), phi)
        g = gains_from_mismatch(m)
        print(f"  xi={xi:.1f}  p={g.p:.3f} q={g.q:.4f}  IP direct {ip_direct(model, eh, m, r_th):.4f}  relay {ip_relay(model, eh, m, r_th):.4f}")
