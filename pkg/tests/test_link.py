import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from iqirelay.iqi import IDEAL_GAINS, IqiMismatch, gains_from_mismatch
from iqirelay.link import (
    NetworkRealization,
    capacity,
    e2e_capacity,
    pick,
    select_ors,
    select_rrs,
    select_srs,
    sinr_from,
    sinr_threshold,
    threshold_epsilon,
)

G = gains_from_mismatch(IqiMismatch.from_degrees(1.1, 5.0))


def test_ideal_sinr_is_plain_snr():
    assert sinr_from(0.7, 0.0, 20.0, IDEAL_GAINS) == pytest.approx(14.0)


def test_sinr_limits():
    assert sinr_from(0.5, 0.0, 1e15, G) == pytest.approx(G.p / G.q, rel=1e-9)
    s2, h = 0.05, 0.4
    lim = h * G.p / (s2 * G.p + h * G.q + s2 * G.q)
    assert sinr_from(h, s2, 1e15, G) == pytest.approx(lim, rel=1e-9)


def test_capacity_examples():
    assert capacity(0.0, 0.5) == 0.0
    assert capacity(3.0, 0.5) == pytest.approx(0.5)
    assert capacity(1.0, 0.2) == pytest.approx(0.4)


def test_e2e():
    assert e2e_capacity(1, 2) == 1
    assert e2e_capacity(0, 5) == 0
    assert e2e_capacity(0.3, 0.3) == 0.3


def test_thresholds():
    assert threshold_epsilon(0.05, 0.5) == pytest.approx(1.148698, abs=1e-6)
    assert threshold_epsilon(0.0, 0.3) == 1.0
    assert threshold_epsilon(0.1, 0.5) == pytest.approx(threshold_epsilon(0.05, 0.75))
    assert sinr_threshold(0.05, 0.5) == pytest.approx(threshold_epsilon(0.05, 0.5) - 1)


@given(st.floats(1e-3, 10), st.floats(0, 0.1), st.floats(1e-3, 1e6), st.floats(0.01, 0.99))
def test_capacity_above_threshold_iff_sinr_above(gain, s2, rho, alpha):
    r = 0.05
    gamma = sinr_from(gain, s2, rho, G)
    c = capacity(gamma, alpha)
    if abs(gamma - sinr_threshold(r, alpha)) > 1e-9:
        assert (c > r) == (gamma > sinr_threshold(r, alpha))
    assert gamma < G.p / G.q


def test_selection_single_relay():
    c = np.array([[0.3], [0.1]])
    assert select_rrs(c).tolist() == [0, 0]
    assert select_srs(c).tolist() == [0, 0]
    assert select_ors(c, c).tolist() == [0, 0]


@given(arrays(float, (5,), elements=st.floats(0, 5)), arrays(float, (5,), elements=st.floats(0, 5)))
def test_selection_matches_exhaustive(c_sr, c_rd):
    best = max(range(5), key=lambda m: (c_sr[m], -m))
    assert select_srs(c_sr) == best
    best_e2e = max(range(5), key=lambda m: (min(c_sr[m], c_rd[m]), -m))
    assert select_ors(c_sr, c_rd) == best_e2e


def test_srs_and_ors_can_disagree():
    c_sr = np.array([2.0, 1.0])
    c_rd = np.array([0.1, 0.9])
    assert select_srs(c_sr) == 0
    assert select_ors(c_sr, c_rd) == 1


def test_srs_follows_gain_argmax():
    rng = np.random.default_rng(1)
    h = rng.exponential(size=(100, 4))
    c = capacity(sinr_from(h, 0.05, 30.0, G), 0.5)
    assert (select_srs(c) == np.argmax(h, axis=1)).all()


def test_rrs_random_and_pick():
    rng = np.random.default_rng(2)
    idx = select_rrs(np.zeros((1000, 3)), rng=rng)
    assert set(np.unique(idx)) == {0, 1, 2}
    vals = np.arange(6).reshape(2, 3)
    assert pick(vals, np.array([2, 0])).tolist() == [2, 3]
    with pytest.raises(IndexError):
        select_rrs(np.zeros((2, 2)), m_fixed=2)


def test_realization_ordering_pointwise():
    rng = np.random.default_rng(3)
    c_sr, c_rd = rng.random((500, 3)), rng.random((500, 3))
    z = np.zeros((500,))
    net = NetworkRealization(z, z, z, z, c_sr, c_rd)
    ors = net.e2e("ors")
    assert (ors >= net.e2e("srs")).all()
    assert (ors >= net.e2e("rrs")).all()
    with pytest.raises(ValueError):
        net.select("best")
