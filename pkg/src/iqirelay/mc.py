"""Monte Carlo estimates of outage and intercept probability.

Each trial draws the beacon gains, turns them into harvested transmit powers,
draws the estimated link gains and evaluates link capacities exactly as the
system model defines them.  Trials are grouped in chunks; chunk ``k`` always
uses the Philox stream keyed by ``(seed, k)``, so results depend on
``(seed, trials, chunk)`` but never on how chunks are spread over workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import iqi as _iqi
from .channel import NetworkModel, link_stats
from .energy import EhConfig, relay_power, source_power
from .link import SCHEMES, NetworkRealization, capacity, pick, sinr_from

IP_MODES = ("direct", "relay")


@dataclass(frozen=True)
class McConfig:
    trials: int = 1_000_000
    seed: int = 20240521
    workers: int = 1
    chunk: int = 1 << 16
    # draw the RRS relay uniformly per trial instead of always using relay 0
    rrs_random: bool = False

    def __post_init__(self):
        if not (isinstance(self.trials, (int, np.integer)) and self.trials >= 1):
            raise ValueError("trials must be a positive integer")
        if not (isinstance(self.chunk, (int, np.integer)) and self.chunk >= 1):
            raise ValueError("chunk must be a positive integer")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class MetricEstimate:
    p_hat: float
    stderr: float
    trials: int
    seed: int

    @classmethod
    def from_count(cls, hits: int, trials: int, seed: int) -> "MetricEstimate":
        p = hits / trials
        return cls(p, math.sqrt(p * (1 - p) / trials), trials, seed)


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(ss))


def _chunk_sizes(trials: int, chunk: int):
    full, rest = divmod(trials, chunk)
    sizes = [chunk] * full
    if rest:
        sizes.append(rest)
    return sizes


class _Context:
    """Everything a chunk needs, resolved once per operating point."""

    def __init__(self, model: NetworkModel, eh: EhConfig, iqi, r_th: float, rrs_random: bool):
        self.model = model
        self.eh = eh
        self.r_th = r_th
        self.imp = _iqi.as_impairments(iqi)
        self.rrs_random = rrs_random
        self.silent = eh.pb == 0
        if not self.silent:
            self.stats = {k: link_stats(model, k, eh.pb) for k in ("bs", "br", "sr", "rd", "se", "re")}

    def capacity(self, kind, gain, power):
        st = self.stats[kind]
        gamma = sinr_from(gain, st.sigma_e2, power / st.noise, self.imp[kind])
        return capacity(gamma, self.eh.alpha)


def draw(ctx: _Context, rng: np.random.Generator, n: int):
    """One chunk of network state plus eavesdropper capacities."""
    m = ctx.model.relays
    st = ctx.stats
    gain_bs = rng.exponential(1 / st["bs"].rate, n)
    gain_br = rng.exponential(1 / st["br"].rate, (n, m))
    gain_sr = rng.exponential(1 / st["sr"].rate, (n, m))
    gain_rd = rng.exponential(1 / st["rd"].rate, (n, m))
    gain_se = rng.exponential(1 / st["se"].rate, n)
    gain_re = rng.exponential(1 / st["re"].rate, (n, m))
    p_s = source_power(ctx.eh, gain_bs)
    p_r = relay_power(ctx.eh, gain_br)
    state = NetworkRealization(
        gain_bs=gain_bs,
        gain_br=gain_br,
        p_s=p_s,
        p_r=p_r,
        c_sr=ctx.capacity("sr", gain_sr, p_s[:, None]),
        c_rd=ctx.capacity("rd", gain_rd, p_r),
    )
    c_se = ctx.capacity("se", gain_se, p_s)
    c_re = ctx.capacity("re", gain_re, p_r)
    return state, c_se, c_re


def _run_chunk(ctx: _Context, seed: int, index: int, n: int, relay_taps) -> dict:
    counts = {}
    if ctx.silent:
        # zero harvested power: every capacity is exactly 0
        for s in SCHEMES:
            counts[("op", s)] = n if ctx.r_th > 0 else 0
        counts[("ip", "direct")] = 0
        for tap in relay_taps:
            counts[("ip", tap)] = 0
        return counts
    rng = chunk_rng(seed, index)
    state, c_se, c_re = draw(ctx, rng, n)
    rrs_rng = rng if ctx.rrs_random else None
    chosen = {}
    for s in SCHEMES:
        chosen[s] = state.select(s, 0, rrs_rng)
        c = np.minimum(pick(state.c_sr, chosen[s]), pick(state.c_rd, chosen[s]))
        counts[("op", s)] = int(np.count_nonzero(c < ctx.r_th))
    counts[("ip", "direct")] = int(np.count_nonzero(c_se > ctx.r_th))
    for tap in relay_taps:
        idx = chosen[tap] if isinstance(tap, str) else np.full(n, tap)
        counts[("ip", tap)] = int(np.count_nonzero(pick(c_re, idx) > ctx.r_th))
    return counts


def simulate(model: NetworkModel, eh: EhConfig, iqi, r_th: float, mc: McConfig | None = None, relay_taps=(0,)) -> dict:
    """Run one Monte Carlo pass and estimate every metric at once.

    Returns a dict keyed by ``("op", scheme)``, ``("ip", "direct")`` and
    ``("ip", tap)`` for each entry of ``relay_taps``: an int is a fixed relay,
    a scheme name taps whichever relay that scheme selects in each trial.
    """
    mc = mc or McConfig()
    for tap in relay_taps:
        if isinstance(tap, str):
            if tap not in SCHEMES:
                raise ValueError(f"unknown relay tap {tap!r}")
        elif not 0 <= tap < model.relays:
            raise IndexError(f"relay index {tap} out of range for M={model.relays}")
    ctx = _Context(model, eh, iqi, r_th, mc.rrs_random)
    sizes = _chunk_sizes(mc.trials, mc.chunk)
    jobs = [(i, n) for i, n in enumerate(sizes)]

    def run(job):
        return _run_chunk(ctx, mc.seed, job[0], job[1], relay_taps)

    if mc.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=mc.workers) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    totals = {}
    for part in parts:
        for key, v in part.items():
            totals[key] = totals.get(key, 0) + v
    return {key: MetricEstimate.from_count(v, mc.trials, mc.seed) for key, v in totals.items()}


def estimate_op(scheme: str, model: NetworkModel, eh: EhConfig, iqi, r_th: float, mc: McConfig | None = None) -> MetricEstimate:
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    return simulate(model, eh, iqi, r_th, mc, relay_taps=())[("op", scheme)]


def estimate_ip(mode: str, model: NetworkModel, eh: EhConfig, iqi, r_th: float, mc: McConfig | None = None, relay_index=0) -> MetricEstimate:
    """Intercept probability of the direct link or of one relay's broadcast.

    ``relay_index`` is a 0-based relay or a scheme name, in which case the
    eavesdropper listens to the relay that scheme selects.
    """
    if mode not in IP_MODES:
        raise ValueError(f"unknown intercept mode {mode!r}; expected one of {IP_MODES}")
    if mode == "direct":
        return simulate(model, eh, iqi, r_th, mc, relay_taps=())[("ip", "direct")]
    return simulate(model, eh, iqi, r_th, mc, relay_taps=(relay_index,))[("ip", relay_index)]
