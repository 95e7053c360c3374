"""Per-link SINR and capacity, decode-and-forward combining and relay selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .iqi import IqiLinkGains

SCHEMES = ("rrs", "srs", "ors")


@dataclass(frozen=True)
class LinkRealization:
    gain: float | np.ndarray
    sigma_e2: float
    rho: float | np.ndarray
    gains: IqiLinkGains


def sinr(l: LinkRealization):
    return sinr_from(l.gain, l.sigma_e2, l.rho, l.gains)


def sinr_from(gain, sigma_e2, rho, gains: IqiLinkGains):
    """SINR of an impaired link with imperfect CSI.

    ``gain`` is the estimated power gain, ``rho = P / N`` the instantaneous
    transmit SNR.  Works elementwise on arrays.
    """
    gain = np.asarray(gain, dtype=float)
    rho = np.asarray(rho, dtype=float)
    p, q, g = gains.p, gains.q, gains.g
    den = sigma_e2 * rho * (p + q) + gain * rho * q + g
    out = gain * rho * p / den
    return out if out.ndim else float(out)


def capacity(gamma, alpha: float):
    """Achievable rate over one of the two transmission phases."""
    return 0.5 * (1 - alpha) * np.log2(1 + np.asarray(gamma, dtype=float))


def e2e_capacity(c_sr, c_rd):
    return np.minimum(c_sr, c_rd)


def threshold_epsilon(r_th: float, alpha: float) -> float:
    """``2 ** (2 R_th / (1 - alpha))``, i.e. the value ``1 + gamma`` must exceed."""
    return 2.0 ** (2.0 * r_th / (1.0 - alpha))


def sinr_threshold(r_th: float, alpha: float) -> float:
    """SINR a link needs for its capacity to exceed ``r_th``."""
    return threshold_epsilon(r_th, alpha) - 1.0


def select_rrs(c_sr, m_fixed: int = 0, rng: np.random.Generator | None = None):
    """Designated relay ``m_fixed``, or a uniform draw per trial when ``rng`` is given."""
    c_sr = np.asarray(c_sr)
    shape, relays = c_sr.shape[:-1], c_sr.shape[-1]
    if rng is not None:
        return rng.integers(0, relays, size=shape)
    if not 0 <= m_fixed < relays:
        raise IndexError(f"relay index {m_fixed} out of range for M={relays}")
    return np.full(shape, m_fixed, dtype=np.intp)


def select_srs(c_sr):
    """Relay with the best first hop; ``argmax`` breaks ties toward the lowest index."""
    return np.argmax(np.asarray(c_sr), axis=-1)


def select_ors(c_sr, c_rd):
    """Relay with the best end-to-end (bottleneck) capacity."""
    return np.argmax(e2e_capacity(np.asarray(c_sr), np.asarray(c_rd)), axis=-1)


def pick(values, index):
    """Gather ``values[..., index]`` per trial."""
    values = np.asarray(values)
    index = np.asarray(index)
    return np.take_along_axis(values, index[..., None], axis=-1)[..., 0]


@dataclass
class NetworkRealization:
    """Per-trial state of the network, vectorised over trials.

    Arrays with a relay axis have shape ``(trials, M)``.
    """

    gain_bs: np.ndarray
    gain_br: np.ndarray
    p_s: np.ndarray
    p_r: np.ndarray
    c_sr: np.ndarray
    c_rd: np.ndarray

    def select(self, scheme: str, m_fixed: int = 0, rng: np.random.Generator | None = None):
        if scheme == "rrs":
            return select_rrs(self.c_sr, m_fixed, rng)
        if scheme == "srs":
            return select_srs(self.c_sr)
        if scheme == "ors":
            return select_ors(self.c_sr, self.c_rd)
        raise ValueError(f"unknown relay-selection scheme {scheme!r}")

    def e2e(self, scheme: str, m_fixed: int = 0, rng: np.random.Generator | None = None):
        chosen = self.select(scheme, m_fixed, rng)
        return e2e_capacity(pick(self.c_sr, chosen), pick(self.c_rd, chosen))
