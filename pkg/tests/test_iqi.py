import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iqirelay.iqi import (
    IDEAL_GAINS,
    UNBOUNDED,
    IqiLinkGains,
    IqiMismatch,
    LinkImpairments,
    as_impairments,
    below_ceiling,
    coefficients_from_mismatch,
    gains_from_mismatch,
    sinr_ceiling,
)

xis = st.floats(0.5, 2.0)
phis = st.floats(-60.0, 60.0)


def brute_force(xi_t, phi_t, xi_r, phi_r):
    # term-by-term transcription, phases in radians
    mu_t = (1 + xi_t * cmath.exp(1j * phi_t)) / 2
    nu_t = (1 - xi_t * cmath.exp(-1j * phi_t)) / 2
    mu_r = (1 + xi_r * cmath.exp(-1j * phi_r)) / 2
    nu_r = (1 - xi_r * cmath.exp(1j * phi_r)) / 2
    p = abs(mu_t * mu_r + nu_t.conjugate() * nu_r) ** 2
    q = abs(mu_r * nu_t + mu_t.conjugate() * nu_r) ** 2
    g = abs(mu_r + nu_r) ** 2
    return (mu_t, nu_t, mu_r, nu_r), (p, q, g)


def test_ideal_coefficients_exact():
    c = coefficients_from_mismatch(IqiMismatch())
    assert (c.mu_t, c.nu_t, c.mu_r, c.nu_r) == (1, 0, 1, 0)
    g = gains_from_mismatch(IqiMismatch())
    assert (g.p, g.q, g.g) == (1.0, 0.0, 1.0)


def test_table_point_matches_complex_oracle():
    m = IqiMismatch.from_degrees(1.1, 5.0)
    c = coefficients_from_mismatch(m)
    coeffs, gains = brute_force(1.1, math.radians(5), 1.1, math.radians(5))
    assert (c.mu_t, c.nu_t, c.mu_r, c.nu_r) == pytest.approx(coeffs, abs=1e-15)
    g = gains_from_mismatch(m)
    assert (g.p, g.q, g.g) == pytest.approx(gains, rel=1e-14)
    assert sinr_ceiling(g) == pytest.approx(gains[0] / gains[1], rel=1e-13)


def test_real_axis_receiver():
    c = coefficients_from_mismatch(IqiMismatch(1.0, 0.0, 2.0, 0.0))
    assert c.mu_r == pytest.approx(1.5)
    assert c.nu_r == pytest.approx(-0.5)


def test_g_identities():
    g = gains_from_mismatch(IqiMismatch.from_degrees(1.1, 5.0))
    assert g.g == pytest.approx(1 + 1.21 * math.sin(math.radians(5)) ** 2, rel=1e-14)
    g90 = gains_from_mismatch(IqiMismatch.from_degrees(1.0, 0.0, 1.0, 90.0))
    assert g90.g == pytest.approx(2.0)


def test_ceiling():
    assert sinr_ceiling(IDEAL_GAINS) is UNBOUNDED
    assert sinr_ceiling(IqiLinkGains(0.9, 0.1, 1.0)) == pytest.approx(9.0)
    assert below_ceiling(1e9, IDEAL_GAINS)
    assert below_ceiling(8.9, IqiLinkGains(0.9, 0.1, 1.0))
    assert not below_ceiling(9.0, IqiLinkGains(0.9, 0.1, 1.0))


@given(xis, phis, xis, phis)
def test_gains_match_oracle(xi_t, phi_t, xi_r, phi_r):
    g = gains_from_mismatch(IqiMismatch.from_degrees(xi_t, phi_t, xi_r, phi_r))
    _, (p, q, gg) = brute_force(xi_t, math.radians(phi_t), xi_r, math.radians(phi_r))
    assert g.p == pytest.approx(p, rel=1e-12, abs=1e-15)
    assert g.q == pytest.approx(q, rel=1e-12, abs=1e-15)
    assert g.g == pytest.approx(gg, rel=1e-12, abs=1e-15)
    assert min(g.p, g.q, g.g) >= 0


@given(xis, phis)
def test_symmetric_mismatch_ceiling_finite_off_ideal(xi, phi):
    g = gains_from_mismatch(IqiMismatch.from_degrees(xi, phi))
    if abs(xi - 1) > 1e-6 or abs(phi) > 1e-6:
        assert g.q > 0


def test_mismatch_validation():
    with pytest.raises(ValueError):
        IqiMismatch(xi_t=0.0)
    with pytest.raises(ValueError):
        IqiMismatch(phi_r=float("nan"))


def test_link_impairments():
    m = IqiMismatch.from_degrees(1.1, 5.0)
    imp = LinkImpairments.from_mismatches(m, se=IqiMismatch())
    assert imp["se"] == IDEAL_GAINS
    assert imp["sr"] == gains_from_mismatch(m)
    assert as_impairments(None)["rd"] == IDEAL_GAINS
    assert as_impairments(m)["re"] == gains_from_mismatch(m)
    assert as_impairments(IDEAL_GAINS)["sr"] == IDEAL_GAINS
    assert as_impairments(imp) is imp
