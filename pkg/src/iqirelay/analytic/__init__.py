from .special import bessel_k1, bessel_k1e, chebyshev_nodes, chebyshev_sum
from .closed_forms import (
    AnalyticConstants,
    HopLadder,
    NumericalExcursionWarning,
    QuadratureConfig,
    constants,
    diversity_order,
    hop_successes,
    ip_direct,
    ip_relay,
    op,
    op_asymptotic,
    op_ors,
    op_ors_exact,
    op_rrs,
    op_srs,
)
