"""I/Q imbalance coefficients and per-link aggregate gains.

The amplitude/phase mismatch of a transmitter and a receiver is folded into
three real numbers per link:

* ``p``: gain of the wanted signal,
* ``q``: gain of the mirror (image) leakage,
* ``g``: scaling of the receiver noise.

The SINR of an impaired link can never exceed ``p / q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class IqiMismatch:
    """Amplitude and phase mismatch at both ends of a link.

    Phases are in radians; use :meth:`from_degrees` for table-style input.
    """

    xi_t: float = 1.0
    phi_t: float = 0.0
    xi_r: float = 1.0
    phi_r: float = 0.0

    def __post_init__(self):
        if not (self.xi_t > 0 and self.xi_r > 0):
            raise ValueError("amplitude mismatch must be positive")
        if not all(map(math.isfinite, (self.xi_t, self.phi_t, self.xi_r, self.phi_r))):
            raise ValueError("mismatch parameters must be finite")

    @classmethod
    def from_degrees(cls, xi_t=1.0, phi_t_deg=0.0, xi_r=None, phi_r_deg=None):
        """Build a mismatch from phases in degrees; RX defaults to the TX values."""
        xi_r = xi_t if xi_r is None else xi_r
        phi_r_deg = phi_t_deg if phi_r_deg is None else phi_r_deg
        return cls(xi_t, math.radians(phi_t_deg), xi_r, math.radians(phi_r_deg))

    @property
    def is_ideal(self) -> bool:
        return self.xi_t == 1.0 and self.xi_r == 1.0 and self.phi_t == 0.0 and self.phi_r == 0.0


IDEAL = IqiMismatch()


@dataclass(frozen=True)
class IqiCoefficients:
    mu_t: complex
    nu_t: complex
    mu_r: complex
    nu_r: complex


@dataclass(frozen=True)
class IqiLinkGains:
    p: float
    q: float
    g: float

    def __post_init__(self):
        if min(self.p, self.q, self.g) < 0:
            raise ValueError("IQI gains must be nonnegative")


IDEAL_GAINS = IqiLinkGains(1.0, 0.0, 1.0)


def coefficients_from_mismatch(m: IqiMismatch) -> IqiCoefficients:
    """Return the TX/RX IQI coefficients.

    The RX pair uses the conjugate phase of the TX pair::

        mu_t = (1 + xi_t e^{+j phi_t}) / 2     nu_t = (1 - xi_t e^{-j phi_t}) / 2
        mu_r = (1 + xi_r e^{-j phi_r}) / 2     nu_r = (1 - xi_r e^{+j phi_r}) / 2
    """
    if m.is_ideal:
        return IqiCoefficients(1 + 0j, 0j, 1 + 0j, 0j)
    et = complex(math.cos(m.phi_t), math.sin(m.phi_t))
    er = complex(math.cos(m.phi_r), math.sin(m.phi_r))
    return IqiCoefficients(
        mu_t=0.5 * (1 + m.xi_t * et),
        nu_t=0.5 * (1 - m.xi_t * et.conjugate()),
        mu_r=0.5 * (1 + m.xi_r * er.conjugate()),
        nu_r=0.5 * (1 - m.xi_r * er),
    )


def link_gains(c: IqiCoefficients) -> IqiLinkGains:
    p = abs(c.mu_t * c.mu_r + c.nu_t.conjugate() * c.nu_r) ** 2
    q = abs(c.mu_r * c.nu_t + c.mu_t.conjugate() * c.nu_r) ** 2
    g = abs(c.mu_r + c.nu_r) ** 2
    return IqiLinkGains(p, q, g)


def gains_from_mismatch(m: IqiMismatch) -> IqiLinkGains:
    return link_gains(coefficients_from_mismatch(m))


class Unbounded:
    """Sentinel for a link whose SINR has no IQI ceiling (q == 0)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED"

    def __str__(self):
        return "unbounded"


UNBOUNDED = Unbounded()


def sinr_ceiling(gains: IqiLinkGains):
    """Largest SINR the link can reach, ``p / q``, or :data:`UNBOUNDED`."""
    if gains.q == 0:
        return UNBOUNDED
    return gains.p / gains.q


def below_ceiling(threshold: float, gains: IqiLinkGains) -> bool:
    """True when an SINR threshold is reachable on this link."""
    ceiling = sinr_ceiling(gains)
    return ceiling is UNBOUNDED or threshold < ceiling


@dataclass(frozen=True)
class LinkImpairments:
    """IQI gains for each link class of the relay network.

    ``sr``: source to relay, ``rd``: relay to destination, ``se``: source to
    eavesdropper, ``re``: relay to eavesdropper.
    """

    sr: IqiLinkGains = IDEAL_GAINS
    rd: IqiLinkGains = IDEAL_GAINS
    se: IqiLinkGains = IDEAL_GAINS
    re: IqiLinkGains = IDEAL_GAINS

    @classmethod
    def uniform(cls, mismatch: IqiMismatch) -> "LinkImpairments":
        g = gains_from_mismatch(mismatch)
        return cls(g, g, g, g)

    @classmethod
    def from_mismatches(cls, default: IqiMismatch, **per_link: IqiMismatch) -> "LinkImpairments":
        unknown = set(per_link) - {"sr", "rd", "se", "re"}
        if unknown:
            raise ValueError(f"unknown link class: {sorted(unknown)}")
        kw = {k: gains_from_mismatch(per_link.get(k, default)) for k in ("sr", "rd", "se", "re")}
        return cls(**kw)

    def __getitem__(self, link: str) -> IqiLinkGains:
        return getattr(self, link)


def as_impairments(iqi) -> LinkImpairments:
    """Accept an :class:`IqiMismatch`, gains, or :class:`LinkImpairments`."""
    if isinstance(iqi, LinkImpairments):
        return iqi
    if isinstance(iqi, IqiMismatch):
        return LinkImpairments.uniform(iqi)
    if isinstance(iqi, IqiLinkGains):
        return LinkImpairments(iqi, iqi, iqi, iqi)
    if iqi is None:
        return LinkImpairments()
    raise TypeError(f"cannot interpret {type(iqi).__name__} as IQI impairments")

