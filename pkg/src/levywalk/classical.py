"""Classical nearest-neighbor walk baseline and the classical second-moment
criterion of the Weierstrass step distribution.

The classical localized probability P0(t) is computed along two independent
routes kept for cross-checking: the Fourier-mode integral of
exp(2*D*t*(cos k - 1)) and the relaxation-density integral over decay rates
gamma in (0, 4D), whose inverse-square-root endpoint singularities are
absorbed exactly by a Gauss-Chebyshev rule.
"""

import math

import numpy as np

from .errors import DomainError, ParameterError
from dataclasses import dataclass


@dataclass(frozen=True)
class ClassicalWalk:
    """Homogeneous NN walk with hop rate / diffusion constant D > 0."""

    D: float

    def __post_init__(self):
        if not (self.D > 0):
            raise ParameterError("D must be > 0")


def classical_characteristic(k, t, walk):
    """Fourier mode lambda(k, t) = exp(2*D*t*(cos k - 1)); <= 1, = 1 at k = 0."""
    if np.any(np.asarray(t) < 0):
        raise ParameterError("t must be >= 0")
    return np.exp(2.0 * walk.D * np.asarray(t) * (np.cos(k) - 1.0))


def _fourier_nodes(Dt):
    # integrand peak at k = 0 has width ~ 1/sqrt(4*D*t)
    return max(64, int(math.ceil(8.0 * math.sqrt(4.0 * Dt + 1.0))))


def classical_localized_probability(t, walk, n_points=None, route="fourier"):
    """Return probability P0(t) of the classical walk.

    route 'fourier': (1/2pi) integral of lambda(k, t) over the zone
    (Gauss-Legendre).  route 'relaxation': integral of exp(-gamma*t) against
    the relaxation density over (0, 4D), via gamma = 2D(1+x) and
    Gauss-Chebyshev in x.  Both converge to the same value; the closed form
    is exp(-2Dt) * I0(2Dt).
    """
    if t < 0:
        raise ParameterError("t must be >= 0")
    Dt = walk.D * t
    n = n_points if n_points else _fourier_nodes(Dt)
    if route == "fourier":
        x, w = np.polynomial.legendre.leggauss(n)
        k = np.pi * x
        return float(np.sum(np.pi * w * classical_characteristic(k, t, walk)) / (2.0 * np.pi))
    if route == "relaxation":
        i = np.arange(1, n + 1)
        x = np.cos((2 * i - 1) * np.pi / (2 * n))
        # (1/pi) int exp(-2D(1+x)t) / sqrt(1-x^2) dx, Chebyshev weight pi/n
        return float(np.sum(np.exp(-2.0 * walk.D * (1.0 + x) * t)) / n)
    raise ParameterError("route must be 'fourier' or 'relaxation'")


def classical_relaxation_density(gamma, walk):
    """Density of relaxation rates (1/pi) / sqrt(4*gamma*D - gamma**2).

    Defined on the open interval 0 < gamma < 4D (integrable edges).
    """
    g = np.atleast_1d(np.asarray(gamma, dtype=float))
    if np.any(g <= 0.0) or np.any(g >= 4.0 * walk.D):
        raise DomainError("relaxation density defined only for 0 < gamma < 4D")
    out = 1.0 / (np.pi * np.sqrt(4.0 * g * walk.D - g ** 2))
    if np.ndim(gamma) == 0:
        return float(out[0])
    return out


def classical_weierstrass_moment_finite(params):
    """True iff the classical Weierstrass step has finite mean-square length.

    The classical criterion is b**2 < A; the quantum walk's threshold is the
    weaker b < A, so e.g. (b=2, A=3) has a divergent classical second moment
    while the quantum one stays finite.
    """
    if params.b < 1:
        raise ParameterError("b must be >= 1")
    return params.b ** 2 < params.A
