"""Modified Bessel function K1 and the Gauss-Chebyshev rule used by the closed forms."""

from __future__ import annotations

import math

import numpy as np

_EULER_GAMMA = 0.5772156649015329
_EPS = 1e-16
_MAXIT = 10_000


def _k1_series(x: float) -> float:
    # A&S 9.6.11 with n = 1; accurate for 0 < x <= 2.
    t = 0.25 * x * x
    term = 1.0  # (x^2/4)^k / (k! (k+1)!)
    psi_k1 = -_EULER_GAMMA  # psi(k + 1)
    psi_k2 = 1.0 - _EULER_GAMMA  # psi(k + 2)
    i1_sum = 0.0
    psi_sum = 0.0
    k = 0
    while True:
        i1_sum += term
        contrib = (psi_k1 + psi_k2) * term
        psi_sum += contrib
        k += 1
        term *= t / (k * (k + 1))
        psi_k1 += 1.0 / k
        psi_k2 += 1.0 / (k + 1)
        if term < _EPS * i1_sum and abs(contrib) < _EPS * abs(psi_sum):
            break
    i1 = 0.5 * x * i1_sum
    return 1.0 / x + math.log(0.5 * x) * i1 - 0.25 * x * psi_sum


def _k1e_steed(x: float) -> float:
    # Steed's continued fraction (Temme's CF2) for K0 and K1, scaled by e^x; x >= 2.
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    else:  # pragma: no cover
        raise ArithmeticError(f"K1 continued fraction did not converge at x={x}")
    h *= a1
    k0e = math.sqrt(math.pi / (2.0 * x)) / s
    return k0e * (x + 0.5 - h) / x


def _k1_scalar(x: float, scaled: bool) -> float:
    if not x > 0:
        raise ValueError(f"K1 is defined for x > 0, got {x}")
    if math.isinf(x):
        return 0.0
    if x <= 2.0:
        v = _k1_series(x)
        return v * math.exp(x) if scaled else v
    v = _k1e_steed(x)
    return v if scaled else v * math.exp(-x)


def bessel_k1(x):
    """Modified Bessel function of the second kind, order one.

    Power series below ``x = 2``, Steed's continued fraction above.  Values
    underflow to exactly 0 for ``x`` beyond ~705.
    """
    if np.ndim(x) == 0:
        return _k1_scalar(float(x), False)
    arr = np.asarray(x, dtype=float)
    return np.array([_k1_scalar(v, False) for v in arr.ravel()]).reshape(arr.shape)


def bessel_k1e(x):
    """Exponentially scaled ``K1(x) * exp(x)``."""
    if np.ndim(x) == 0:
        return _k1_scalar(float(x), True)
    arr = np.asarray(x, dtype=float)
    return np.array([_k1_scalar(v, True) for v in arr.ravel()]).reshape(arr.shape)


def chebyshev_nodes(y: int) -> np.ndarray:
    """``cos((2l - 1) pi / (2Y))`` for ``l = 1..Y``."""
    if y < 1:
        raise ValueError("need at least one node")
    l = np.arange(1, y + 1)
    return np.cos((2 * l - 1) * np.pi / (2 * y))


def chebyshev_sum(f, upper: float, y: int) -> float:
    r"""Approximate :math:`\int_0^\Lambda f(x)\,dx` with ``y`` Chebyshev nodes.

    ``(pi Lambda / 2Y) * sum f(Lambda (delta_l + 1) / 2) * sqrt(1 - delta_l^2)``.
    The error decays like ``Y**-2`` unless ``f`` vanishes at both ends.
    """
    if not upper > 0:
        raise ValueError("upper limit must be positive")
    d = chebyshev_nodes(y)
    with np.errstate(under="ignore", over="ignore"):
        vals = np.asarray(f(0.5 * upper * (d + 1.0)), dtype=float)
        return float(np.pi * upper / (2 * y) * np.sum(vals * np.sqrt(1.0 - d * d)))
