"""Time-switching harvester with hard saturation.

A fraction ``alpha`` of each block is spent harvesting from the power beacon;
the stored energy is spent over the remaining ``(1 - alpha) / 2`` of the block
(two equal transmission phases), hence the conversion factor
``A = 2 * alpha * efficiency / (1 - alpha)``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class EhConfig:
    """Harvester and beacon parameters.

    Attributes:
        alpha: time fraction used for harvesting, in (0, 1).
        sigma1: conversion efficiency at the source.
        sigma2: conversion efficiency at the relays.
        gamma1: saturation threshold of the source harvester (received power).
        gamma2: saturation threshold of the relay harvesters.
        pb: beacon transmit power, linear units relative to unit noise.
        t_block: block duration; cancels from every rate expression.
    """

    alpha: float = 0.5
    sigma1: float = 0.5
    sigma2: float = 0.5
    gamma1: float = 10.0
    gamma2: float = 10.0
    pb: float = 100.0
    t_block: float = 1.0

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0,1)")
        for name in ("sigma1", "sigma2"):
            if not 0 < getattr(self, name) < 1:
                raise ValueError(f"{name} must lie in (0,1)")
        if not (self.gamma1 > 0 and self.gamma2 > 0):
            raise ValueError("saturation thresholds must be positive")
        if not self.pb >= 0:
            raise ValueError("beacon power must be nonnegative")
        if not self.t_block > 0:
            raise ValueError("block duration must be positive")

    def with_(self, **changes) -> "EhConfig":
        return replace(self, **changes)

    @property
    def a1(self) -> float:
        return 2 * self.alpha * self.sigma1 / (1 - self.alpha)

    @property
    def a2(self) -> float:
        return 2 * self.alpha * self.sigma2 / (1 - self.alpha)

    @property
    def e1(self) -> float:
        """Beacon gain at which the source harvester saturates."""
        return self.gamma1 / self.pb if self.pb > 0 else np.inf

    @property
    def e2(self) -> float:
        return self.gamma2 / self.pb if self.pb > 0 else np.inf


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


def harvested_energy(efficiency: float, pb: float, gain, alpha: float, t_block: float = 1.0):
    """Energy collected in the harvesting slot, before saturation."""
    return efficiency * pb * np.asarray(gain) * alpha * t_block


def _saturating_power(conversion: float, pb: float, threshold: float, gain):
    received = pb * np.asarray(gain, dtype=float)
    return conversion * np.minimum(received, threshold)


def source_power(cfg: EhConfig, gain_bs):
    """Transmit power of the source given the beacon-to-source gain."""
    return _saturating_power(cfg.a1, cfg.pb, cfg.gamma1, gain_bs)


def relay_power(cfg: EhConfig, gain_br):
    return _saturating_power(cfg.a2, cfg.pb, cfg.gamma2, gain_br)
