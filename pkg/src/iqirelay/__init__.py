"""Outage and intercept analysis of wireless-powered decode-and-forward relaying
with I/Q imbalance, channel-estimation error and saturating energy harvesters."""

from .analytic import (
    QuadratureConfig,
    bessel_k1,
    chebyshev_sum,
    diversity_order,
    ip_direct,
    ip_relay,
    op_asymptotic,
    op_ors,
    op_ors_exact,
    op_rrs,
    op_srs,
)
from .channel import FixedCee, LinkId, NetworkModel, SnrDependentCee
from .energy import EhConfig, db_to_linear
from .iqi import IqiLinkGains, IqiMismatch, LinkImpairments
from .link import capacity, sinr_threshold, threshold_epsilon
from .mc import McConfig, MetricEstimate, estimate_ip, estimate_op, simulate

__version__ = "0.1.0"
