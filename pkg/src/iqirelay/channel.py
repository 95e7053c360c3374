"""Network topology, Rayleigh fading with path loss, and channel-estimation error.

Every fading power gain is exponential.  For an estimated link the receiver
only knows ``h_hat`` with ``h = h_hat + e``; the LMMSE decomposition gives
``Var(h_hat) = Omega - sigma_e^2`` so ``|h_hat|^2 ~ Exp(1 / (Omega - sigma_e^2))``.
The beacon links (BS, BR) carry no estimation error.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Union

import numpy as np

LINK_CLASSES = ("bs", "br", "sr", "rd", "se", "re")
ESTIMATED = ("sr", "rd", "se", "re")
EAVESDROPPER = ("se", "re")


@dataclass(frozen=True)
class LinkId:
    """One link of the network; ``relay`` is a 0-based index, unused for BS/SE."""

    kind: str
    relay: int | None = None

    def __post_init__(self):
        if self.kind not in LINK_CLASSES:
            raise ValueError(f"unknown link kind {self.kind!r}")
        if self.kind in ("bs", "se"):
            if self.relay is not None:
                raise ValueError(f"link {self.kind} has no relay index")
        elif self.relay is None or self.relay < 0:
            raise ValueError(f"link {self.kind} needs a relay index")

    def check(self, relays: int) -> "LinkId":
        if self.relay is not None and self.relay >= relays:
            raise IndexError(f"relay index {self.relay} out of range for M={relays}")
        return self

    def __str__(self):
        return self.kind.upper() if self.relay is None else f"{self.kind.upper()}{self.relay + 1}"


@dataclass(frozen=True)
class FixedCee:
    """Estimation-error variance fixed at ``t``."""

    t: float = 0.0

    def __post_init__(self):
        if not self.t >= 0:
            raise ValueError("CEE variance must be nonnegative")

    def variance(self, omega: float, rho: float) -> float:
        return self.t


@dataclass(frozen=True)
class SnrDependentCee:
    """Estimation-error variance ``Omega / (1 + delta * rho * Omega)``."""

    delta: float = 1.0

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("CEE quality parameter delta must be positive")

    def variance(self, omega: float, rho: float) -> float:
        return omega / (1.0 + self.delta * rho * omega)


CeeModel = Union[FixedCee, SnrDependentCee]


class DegenerateChannelError(ValueError):
    """The estimation-error variance leaves no variance for the estimate."""


@dataclass(frozen=True)
class NetworkModel:
    relays: int = 2
    d_sr: float = 1.5
    d_rd: float = 1.5
    d_re: float = 1.5
    d_se: float = 2.0
    d_bs: float = 1.0
    d_br: float = 1.0
    path_loss_exponent: float = 3.0
    noise: dict = field(default_factory=lambda: {k: 1.0 for k in ESTIMATED})
    cee: CeeModel = field(default_factory=FixedCee)
    # None means the eavesdropper links use ``cee``
    cee_eve: CeeModel | None = None

    def __post_init__(self):
        if not (isinstance(self.relays, (int, np.integer)) and self.relays >= 1):
            raise ValueError("relay count M must be an integer >= 1")
        if not self.path_loss_exponent > 0:
            raise ValueError("path-loss exponent must be positive")
        for k in LINK_CLASSES:
            if not self.distance(k) > 0:
                raise ValueError(f"distance d_{k} must be positive")
        if isinstance(self.noise, (int, float)):
            object.__setattr__(self, "noise", {k: float(self.noise) for k in ESTIMATED})
        missing = set(ESTIMATED) - set(self.noise)
        if missing:
            raise ValueError(f"noise power missing for {sorted(missing)}")
        if any(not self.noise[k] > 0 for k in ESTIMATED):
            raise ValueError("noise powers must be positive")
        for k in ESTIMATED:
            cee = self.cee_for(k)
            if isinstance(cee, FixedCee) and cee.t >= self.omega(k):
                raise DegenerateChannelError(
                    f"CEE variance {cee.t} must be below Omega_{k} = {self.omega(k):.6g}"
                )

    def with_(self, **changes) -> "NetworkModel":
        return replace(self, **changes)

    def distance(self, kind: str) -> float:
        return getattr(self, f"d_{_kind(kind)}")

    def omega(self, link) -> float:
        """Channel-gain variance ``d ** -beta``."""
        return self.distance(link) ** (-self.path_loss_exponent)

    def noise_power(self, link) -> float:
        return self.noise[_kind(link)]

    def cee_for(self, link) -> CeeModel:
        kind = _kind(link)
        if kind in EAVESDROPPER and self.cee_eve is not None:
            return self.cee_eve
        return self.cee


def _kind(link) -> str:
    return link.kind if isinstance(link, LinkId) else link


def estimation_variance(model: NetworkModel, link, rho: float) -> float:
    """CEE variance of ``link`` at average transmit SNR ``rho``.

    Beacon links are perfectly known and return 0.
    """
    if rho < 0:
        raise ValueError("average SNR must be nonnegative")
    kind = _kind(link)
    if kind not in ESTIMATED:
        return 0.0
    omega = model.omega(kind)
    cee = model.cee_for(kind)
    var = cee.variance(omega, rho)
    if isinstance(cee, FixedCee) and var >= omega:
        raise DegenerateChannelError(f"CEE variance {var} must be below Omega = {omega}")
    return var


def estimated_gain_rate(model: NetworkModel, link, rho: float) -> float:
    """Exponential rate of the estimated power gain ``|h_hat|^2``."""
    kind = _kind(link)
    spread = model.omega(kind) - estimation_variance(model, kind, rho)
    if not spread > 0:
        raise DegenerateChannelError(
            f"no estimated-channel variance left on link {kind} (Omega - sigma_e^2 = {spread})"
        )
    return 1.0 / spread


def beacon_rho(pb: float, model: NetworkModel, link) -> float:
    """Deterministic SNR proxy ``P_B / N_j`` used by the SNR-dependent CEE."""
    return pb / model.noise_power(link)


@dataclass(frozen=True)
class LinkStats:
    """Fading statistics of one link class at a given beacon power."""

    rate: float
    sigma_e2: float
    noise: float


def link_stats(model: NetworkModel, kind: str, pb: float) -> LinkStats:
    if kind in ("bs", "br"):
        return LinkStats(1.0 / model.omega(kind), 0.0, 0.0)
    rho = beacon_rho(pb, model, kind)
    return LinkStats(
        estimated_gain_rate(model, kind, rho),
        estimation_variance(model, kind, rho),
        model.noise_power(kind),
    )


def sample_gain(rate: float, rng: np.random.Generator, size=None) -> np.ndarray | float:
    """Draw exponential power gains with mean ``1 / rate``."""
    if not rate > 0:
        raise ValueError("exponential rate must be positive")
    return rng.exponential(1.0 / rate, size=size)
