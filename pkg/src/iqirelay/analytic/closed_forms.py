"""Closed-form outage and intercept probabilities.

Every closed form splits a hop into "harvester saturated" and "harvester
linear" events.  The linear part reduces to

    integral_{Lambda}^{inf} exp(-gamma u - beta / (4u)) du
        = sqrt(beta/gamma) K1(sqrt(beta gamma)) - integral_0^{Lambda} (...)

where the finite piece is evaluated with the Chebyshev rule.  The SINR
threshold plugged into the constant ladder is ``2**(2R/(1-alpha)) - 1``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from math import comb

import numpy as np
from scipy import integrate

from .. import iqi as _iqi
from ..channel import FixedCee, NetworkModel, link_stats
from ..energy import EhConfig
from ..link import SCHEMES, sinr_threshold
from .special import bessel_k1e, chebyshev_sum

_EXCURSION = 1e-9


class NumericalExcursionWarning(RuntimeWarning):
    """A closed form left [0, 1] by more than rounding noise before clamping."""


@dataclass(frozen=True)
class QuadratureConfig:
    y: int = 200

    def __post_init__(self):
        if self.y < 4:
            raise ValueError("need at least 4 Chebyshev nodes")


def _quad(quad) -> QuadratureConfig:
    if quad is None:
        return QuadratureConfig()
    if isinstance(quad, QuadratureConfig):
        return quad
    return QuadratureConfig(int(quad))


@dataclass(frozen=True)
class HopLadder:
    """Constants of one hop: ``C, C', T, Theta, beta, gamma, Lambda`` plus fading rates.

    ``valid`` is False when the SINR threshold is at or above the IQI ceiling
    (``C <= 0``); the remaining fields are then NaN.
    """

    lam: float
    lam_b: float
    a: float
    e: float
    c: float
    c_prime: float
    t: float
    theta: float
    beta: float
    gamma: float
    lam_cap: float
    h: float
    valid: bool


def _hop_ladder(*, lam, lam_b, a, gamma_sat, pb, sigma_e2, noise, eps, gains, beta_scale=4.0):
    p, q, g = gains.p, gains.q, gains.g
    e = gamma_sat / pb
    if p - q * eps <= 0:
        nan = math.nan
        return HopLadder(lam, lam_b, a, e, nan, nan, nan, nan, nan, nan, nan, nan, False)
    c = a * pb * (p - q * eps)
    c_prime = sigma_e2 * a * pb * eps * (p + q)
    t = g * noise * eps / (c * e) + c_prime / c
    theta = (eps * sigma_e2 * a * gamma_sat * (p + q) + eps * g * noise) / (a * gamma_sat * (p - eps * q))
    beta = beta_scale * lam_b * g * noise * eps
    return HopLadder(
        lam=lam,
        lam_b=lam_b,
        a=a,
        e=e,
        c=c,
        c_prime=c_prime,
        t=t,
        theta=theta,
        beta=beta,
        gamma=lam / c,
        lam_cap=c * t - c_prime,
        h=eps * sigma_e2 * (p + q) / (p - eps * q),
        valid=True,
    )


@dataclass(frozen=True)
class AnalyticConstants:
    """Constant ladder for one operating point.

    Hops are named after the link they describe: ``sr`` (C1/C2, T1, Theta1,
    beta1, gamma1, Lambda1), ``rd`` (C3/C4, T3, Theta2, ...), ``se`` (C9/C10,
    T9, Theta5, beta5 without the factor 4), ``re`` (C11/C12, T11, Theta6).
    The suboptimal-selection ladder (C5..C8) coincides with ``sr``/``rd``
    because all relays are statistically identical; its binomial weights are
    ``xi_weights``.
    """

    a1: float
    a2: float
    e1: float
    e2: float
    eps: float
    relays: int
    sr: HopLadder
    rd: HopLadder
    se: HopLadder
    re: HopLadder
    xi_weights: tuple

    # Named accessors for the printed symbols.
    c1 = property(lambda s: s.sr.c)
    c2 = property(lambda s: s.sr.c_prime)
    c3 = property(lambda s: s.rd.c)
    c4 = property(lambda s: s.rd.c_prime)
    c5 = c1
    c6 = c2
    c7 = c3
    c8 = c4
    c9 = property(lambda s: s.se.c)
    c10 = property(lambda s: s.se.c_prime)
    c11 = property(lambda s: s.re.c)
    c12 = property(lambda s: s.re.c_prime)
    t1 = property(lambda s: s.sr.t)
    t3 = property(lambda s: s.rd.t)
    t5 = t1
    t7 = t3
    t9 = property(lambda s: s.se.t)
    t11 = property(lambda s: s.re.t)
    theta1 = property(lambda s: s.sr.theta)
    theta2 = property(lambda s: s.rd.theta)
    theta3 = theta1
    theta4 = theta2
    theta5 = property(lambda s: s.se.theta)
    theta6 = property(lambda s: s.re.theta)
    beta1 = property(lambda s: s.sr.beta)
    beta2 = property(lambda s: s.rd.beta)
    beta3 = beta1
    beta4 = beta2
    beta5 = property(lambda s: s.se.beta)
    beta6 = property(lambda s: s.re.beta)
    gamma1 = property(lambda s: s.sr.gamma)
    gamma2 = property(lambda s: s.rd.gamma)
    gamma4 = gamma2
    gamma5 = property(lambda s: s.se.gamma)
    gamma6 = property(lambda s: s.re.gamma)
    lambda_cap1 = property(lambda s: s.sr.lam_cap)
    lambda_cap2 = property(lambda s: s.rd.lam_cap)
    lambda_cap3 = lambda_cap1
    lambda_cap4 = lambda_cap2
    lambda_cap5 = property(lambda s: s.se.lam_cap)
    lambda_cap6 = property(lambda s: s.re.lam_cap)
    h1 = property(lambda s: s.sr.h)
    h2 = property(lambda s: s.rd.h)
    h3 = h1
    h4 = h2

    def gamma3(self, s: int) -> float:
        return self.sr.lam * (s + 1) / self.sr.c


def constants(model: NetworkModel, eh: EhConfig, iqi, r_th: float) -> AnalyticConstants:
    """Build the constant ladder at the beacon power ``eh.pb`` (must be > 0)."""
    if not eh.pb > 0:
        raise ValueError("the constant ladder needs a positive beacon power")
    imp = _iqi.as_impairments(iqi)
    eps = sinr_threshold(r_th, eh.alpha)
    bs = link_stats(model, "bs", eh.pb)
    br = link_stats(model, "br", eh.pb)

    def hop(kind, lam_b, a, gamma_sat, beta_scale=4.0):
        st = link_stats(model, kind, eh.pb)
        return _hop_ladder(
            lam=st.rate,
            lam_b=lam_b,
            a=a,
            gamma_sat=gamma_sat,
            pb=eh.pb,
            sigma_e2=st.sigma_e2,
            noise=st.noise,
            eps=eps,
            gains=imp[kind],
            beta_scale=beta_scale,
        )

    sr = hop("sr", bs.rate, eh.a1, eh.gamma1)
    m = model.relays
    xi = tuple(-m * sr.lam * comb(m - 1, s) * (-1) ** s for s in range(m))
    return AnalyticConstants(
        a1=eh.a1,
        a2=eh.a2,
        e1=eh.e1,
        e2=eh.e2,
        eps=eps,
        relays=m,
        sr=sr,
        rd=hop("rd", br.rate, eh.a2, eh.gamma2),
        se=hop("se", bs.rate, eh.a1, eh.gamma1, beta_scale=1.0),
        re=hop("re", br.rate, eh.a2, eh.gamma2),
        xi_weights=xi,
    )


# ---------------------------------------------------------------------------
# building blocks


def _exp(x):
    # exp with exact-zero semantics far below the double range
    return 0.0 if x < -745.0 else math.exp(x)


def _bessel_tail(lam, c, c_prime, beta, gamma, lam_cap, y, bessel_scale=1.0):
    """``(1/C) e^{-lam C'/C} [ s sqrt(b/g) K1(s sqrt(b g)) - Chebyshev(0..Lambda) ]``.

    ``bessel_scale`` is 1 for ``beta`` carrying the factor 4 and 2 otherwise.
    """
    z = bessel_scale * math.sqrt(beta * gamma)
    lead = -lam * c_prime / c
    full = bessel_scale * math.sqrt(beta / gamma) * bessel_k1e(z) * _exp(lead - z)
    if bessel_scale == 1.0:
        f = lambda u: np.exp(-beta / (4 * u) - gamma * u + lead)
    else:
        f = lambda u: np.exp(-gamma * u - beta / u + lead)
    part = chebyshev_sum(f, lam_cap, y)
    return (full - part) / c


def _hop_success(h: HopLadder, y: int, bessel_scale=1.0) -> float:
    """Pr{SINR > eps} for a single hop with exponential estimated gain."""
    if not h.valid:
        return 0.0
    if h.beta == 0.0:
        return 1.0
    phi = _bessel_tail(h.lam, h.c, h.c_prime, h.beta, h.gamma, h.lam_cap, y, bessel_scale)
    eb = _exp(-h.lam_b * h.e)
    return h.lam * phi + eb * (_exp(-h.lam * h.theta) - _exp(-h.lam * h.t))


def _best_of_hop_success(h: HopLadder, xi_weights, y: int) -> float:
    """Pr{SINR > eps} when the hop gain is the maximum of M exponentials."""
    if not h.valid:
        return 0.0
    if h.beta == 0.0:
        return 1.0
    m = len(xi_weights)
    eb = _exp(-h.lam_b * h.e)
    total = 0.0
    for s, w in enumerate(xi_weights):
        rate = h.lam * (s + 1)
        phi5 = _exp(-rate * h.t) / rate
        phi6 = _bessel_tail(rate, h.c, h.c_prime, h.beta, rate / h.c, h.lam_cap, y)
        total += w * (eb * phi5 - phi6)
    m6 = (1.0 - (1.0 - _exp(-h.lam * h.theta)) ** m) * eb
    return total + m6


def _clamp(value: float, what: str) -> float:
    if value < -_EXCURSION or value > 1 + _EXCURSION:
        warnings.warn(f"{what} evaluated to {value!r}; clamping to [0, 1]", NumericalExcursionWarning, stacklevel=3)
    return min(1.0, max(0.0, value))


def _zero_threshold(r_th: float) -> bool:
    return r_th <= 0.0


# ---------------------------------------------------------------------------
# outage probability


def hop_successes(model, eh, iqi, r_th, quad=None):
    """``(I1, I2)``: success probabilities of the S-R and R-D hops of one relay."""
    y = _quad(quad).y
    k = constants(model, eh, iqi, r_th)
    return _hop_success(k.sr, y), _hop_success(k.rd, y)


def op_rrs(model: NetworkModel, eh: EhConfig, iqi, r_th: float, quad=None) -> float:
    """Outage probability with a fixed (or uniformly random) relay."""
    if _zero_threshold(r_th):
        return 0.0
    if eh.pb == 0:
        return 1.0
    i1, i2 = hop_successes(model, eh, iqi, r_th, quad)
    return _clamp(1.0 - i1 * i2, "RRS outage")


def op_srs(model: NetworkModel, eh: EhConfig, iqi, r_th: float, quad=None) -> float:
    """Outage probability when the relay with the strongest first hop is used."""
    if _zero_threshold(r_th):
        return 0.0
    if eh.pb == 0:
        return 1.0
    y = _quad(quad).y
    k = constants(model, eh, iqi, r_th)
    i3 = _best_of_hop_success(k.sr, k.xi_weights, y)
    i4 = _hop_success(k.rd, y)
    return _clamp(1.0 - i3 * i4, "SRS outage")


def op_ors(model: NetworkModel, eh: EhConfig, iqi, r_th: float, quad=None) -> float:
    """Outage probability of max-min selection as a product of per-relay outages.

    The product treats the M first hops as independent.  They share the
    source's harvested power, so this is exact only when that power is
    deterministic (saturated harvester); see :func:`op_ors_exact`.
    """
    if _zero_threshold(r_th):
        return 0.0
    if eh.pb == 0:
        return 1.0
    i1, i2 = hop_successes(model, eh, iqi, r_th, quad)
    return _clamp((1.0 - i1 * i2) ** model.relays, "ORS outage")


def op_ors_exact(model: NetworkModel, eh: EhConfig, iqi, r_th: float, quad=None) -> float:
    """Max-min selection outage conditioned on the shared source power.

    Given the beacon-to-source gain ``z`` the relays are independent, so
    ``P = E_z[(1 - s(z) I2)^M]`` with ``s(z)`` the conditional first-hop
    success.  The outer expectation is integrated adaptively.
    """
    if _zero_threshold(r_th):
        return 0.0
    if eh.pb == 0:
        return 1.0
    y = _quad(quad).y
    k = constants(model, eh, iqi, r_th)
    h = k.sr
    if not h.valid:
        return 1.0
    i2 = _hop_success(k.rd, y)
    m = model.relays
    # SINR > eps  <=>  |h_hat|^2 > (eps g N / rho + C'/ (A P_B)) / (p - eps q) = C'/C + gN eps/(A z P_B (p - eps q))
    noise_term = h.lam_cap * h.e / h.c  # g N eps / (A P_B (p - eps q))
    floor = h.c_prime / h.c

    def integrand(z):
        s = math.exp(-h.lam * (floor + noise_term / z)) if z > 0 else 0.0
        return h.lam_b * math.exp(-h.lam_b * z) * (1.0 - s * i2) ** m

    upper = h.e
    lin, _ = integrate.quad(integrand, 0.0, upper, epsabs=1e-13, epsrel=1e-11, limit=400)
    sat = _exp(-h.lam_b * upper) * (1.0 - _exp(-h.lam * h.theta) * i2) ** m
    return _clamp(lin + sat, "exact ORS outage")


_OP = {"rrs": op_rrs, "srs": op_srs, "ors": op_ors}


def op(scheme: str, model, eh, iqi, r_th, quad=None) -> float:
    try:
        fn = _OP[scheme]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}") from None
    return fn(model, eh, iqi, r_th, quad)


def op_asymptotic(scheme: str, model: NetworkModel, eh: EhConfig, iqi, r_th: float, saturated: bool = False) -> float:
    """High-beacon-power outage floor under a fixed CEE variance.

    With ``saturated=False`` the transmit SNR grows without bound and the
    floor is set by the estimation error alone.  A harvester with a finite
    saturation threshold caps the transmit power instead; ``saturated=True``
    returns that limit, which adds the noise term ``eps g N / (A Gamma (p - eps q))``.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    if not isinstance(model.cee, FixedCee):
        raise ValueError("the outage floor is defined for a fixed CEE variance")
    if _zero_threshold(r_th):
        return 0.0
    k = constants(model, eh.with_(pb=1.0), iqi, r_th)
    if not (k.sr.valid and k.rd.valid):
        return 1.0
    h1 = k.sr.theta if saturated else k.sr.h
    h2 = k.rd.theta if saturated else k.rd.h
    lam_sr, lam_rd = k.sr.lam, k.rd.lam
    m = model.relays
    if scheme == "rrs":
        return 1.0 - math.exp(-lam_sr * h1 - lam_rd * h2)
    if scheme == "srs":
        return 1.0 - (1.0 - (1.0 - math.exp(-lam_sr * h1)) ** m) * math.exp(-lam_rd * h2)
    return (1.0 - math.exp(-lam_sr * h1 - lam_rd * h2)) ** m


def diversity_order(op_values) -> float:
    """Least-squares slope of ``-log OP`` against ``log rho``.

    ``op_values`` is a sequence of ``(rho, OP)`` pairs with ``rho`` in linear units.
    """
    pts = np.asarray(list(op_values), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise ValueError("need at least two (rho, OP) pairs")
    rho, p = pts[:, 0], pts[:, 1]
    if np.any(rho <= 0) or np.any(p <= 0):
        raise ValueError("rho and OP must be positive to take logarithms")
    x = np.log(rho)
    yv = -np.log(p)
    slope = np.polyfit(x, yv, 1)[0]
    return float(slope)


# ---------------------------------------------------------------------------
# intercept probability


def ip_direct(model: NetworkModel, eh: EhConfig, iqi, r_th: float, quad=None) -> float:
    """Probability that the eavesdropper decodes the source directly."""
    if eh.pb == 0:
        return 0.0
    if _zero_threshold(r_th):
        return 1.0
    y = _quad(quad).y
    h = constants(model, eh, iqi, r_th).se
    if not h.valid:
        return 0.0
    phi10 = _bessel_tail(h.lam, h.c, h.c_prime, h.beta, h.gamma, h.lam_cap, y, bessel_scale=2.0)
    eb = _exp(-h.lam_b * h.e)
    value = -eb * _exp(-h.lam * h.t) + h.lam * phi10 + _exp(-h.lam * h.theta) * eb
    return _clamp(value, "direct intercept")


def ip_relay(model: NetworkModel, eh: EhConfig, iqi, r_th: float, quad=None, relay_index: int = 0) -> float:
    """Probability that the eavesdropper decodes relay ``relay_index``.

    Relays are statistically identical, so the index only gets range-checked.
    """
    if not 0 <= relay_index < model.relays:
        raise IndexError(f"relay index {relay_index} out of range for M={model.relays}")
    if eh.pb == 0:
        return 0.0
    if _zero_threshold(r_th):
        return 1.0
    y = _quad(quad).y
    h = constants(model, eh, iqi, r_th).re
    return _clamp(_hop_success(h, y), "relay intercept")
