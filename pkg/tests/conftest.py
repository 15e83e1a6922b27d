"""Shared independent oracles for the test suite.

The oracles deliberately take different computational routes than the
library: mpmath for exact angle reduction, direct O(N**2) double sums for
everything the library evaluates through the collapsed C/S products, and
high-order partial sums for the truncated series values.
"""

import math

import mpmath
import numpy as np
import pytest

from levywalk import series_weights
from levywalk._angles import angle_ladder


def mp_lacunary_cs(k, A, b, n_terms, dps=40):
    """(C, S) partial sums with mpmath angle reduction and accumulation."""
    with mpmath.workdps(dps):
        kk = mpmath.mpf(k)
        two_pi = 2 * mpmath.pi
        w0 = (mpmath.mpf(A) - 1) / A
        C = mpmath.mpf(0)
        S = mpmath.mpf(0)
        for n in range(n_terms):
            theta = mpmath.fmod(kk * (b ** n), two_pi)
            wn = w0 / mpmath.mpf(A) ** n
            C += wn * mpmath.cos(theta)
            S += wn * mpmath.sin(theta)
        return float(C), float(S)


def ladder_angles(k, b, n_terms):
    """theta_n = (b**n k) mod 2pi as evaluated by the library's ladder."""
    ks = np.atleast_1d(np.asarray(k, dtype=float))
    cos_rows = []
    sin_rows = []
    for c, s in angle_ladder(ks, b, n_terms):
        cos_rows.append(c)
        sin_rows.append(s)
    return np.arctan2(np.array(sin_rows), np.array(cos_rows))


def direct_double_cos_sum(k, params, n_terms):
    """sum_{n,m} w_n w_m cos(k*(b**n - b**m)), evaluated term by term.

    Uses the same reduced angles as the library but takes the cosine of the
    angle *difference* instead of expanding into C/S products, so it checks
    the collapse identity along an independent arithmetic route.
    """
    theta = ladder_angles(k, params.b, n_terms)[:, 0]
    w = series_weights(params, n_terms)
    return float(math.fsum(
        w[n] * w[m] * math.cos(theta[n] - theta[m])
        for n in range(n_terms) for m in range(n_terms)))


def direct_exponent_oracle(k1, k2, params, bath, n_terms):
    """The evolution exponent assembled from the raw double sums."""
    th1 = ladder_angles(k1, params.b, n_terms)[:, 0]
    th2 = ladder_angles(k2, params.b, n_terms)[:, 0]
    w = series_weights(params, n_terms)
    single = math.fsum(w[n] * (math.cos(th1[n]) - math.cos(th2[n]))
                       for n in range(n_terms))
    pairs = [(n, m) for n in range(n_terms) for m in range(n_terms)]
    eff1 = math.fsum(w[n] * w[m] * math.cos(th1[m] - th1[n]) for n, m in pairs)
    eff2 = math.fsum(w[n] * w[m] * math.cos(th2[m] - th2[n]) for n, m in pairs)
    diss = math.fsum(w[n] * w[m] * (2.0 * math.cos(th1[n] - th2[m])
                                    - math.cos(th1[n] - th1[m])
                                    - math.cos(th2[n] - th2[m]))
                     for n, m in pairs)
    im = (params.Omega / bath.hbar) * single + bath.omega_c * (eff1 - eff2)
    re = (np.pi * bath.alpha / (2.0 * bath.beta * bath.hbar)) * diss
    return re + 1j * im


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260811)
