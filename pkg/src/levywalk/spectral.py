"""Spectral analyses of the walk Hamiltonian: density of states, regime
classification, and box-counting dimension of the eigenenergy graph.

The density of states is estimated as the pushforward of the uniform measure
on the Brillouin zone through E_k (a histogram over sampled k).  The
root-finding form 1/|E'(k_j)| is ill-posed near criticality; the pushforward
is its weak-form equivalent and works in every regime.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .weierstrass import default_budget, eigenenergy, eigenenergy_derivative

REGIME_NN = "nn"
REGIME_SMOOTH = "smooth"
REGIME_CRITICAL = "critical"
# DosEstimate uses "well_defined" for the smooth 1 < b < A case
_DOS_REGIME = {REGIME_NN: "nn", REGIME_SMOOTH: "well_defined", REGIME_CRITICAL: "critical"}

DEFAULT_SCALE_LADDER = tuple(2.0 ** -e for e in range(3, 12))


@dataclass(frozen=True)
class DosEstimate:
    bin_edges: np.ndarray   # energy units, len = n_bins + 1
    density: np.ndarray     # 1/energy, integrates to 1
    n_samples: int
    regime: str             # well_defined | nn | critical

    def normalization(self):
        return float(np.sum(self.density * np.diff(self.bin_edges)))


def classify_regime(params):
    """nn (b=1), smooth (1 < b < A), or critical (b >= A)."""
    if params.b == 1:
        return REGIME_NN
    return REGIME_SMOOTH if params.b < params.A else REGIME_CRITICAL


def regime_from_derivative(params, n_probes=32, order=15, seed=0):
    """Dynamic cross-check of classify_regime via derivative-term growth.

    Evaluates the growth flag of the truncated dE/dk series at random k and
    votes: a majority of flagged points signals the critical regime.
    """
    rng = np.random.default_rng(seed)
    ks = rng.uniform(-np.pi, np.pi, size=n_probes)
    _, flags = eigenenergy_derivative(ks, params, order)
    critical = int(np.count_nonzero(flags)) > n_probes // 2
    if critical:
        return REGIME_CRITICAL
    return REGIME_NN if params.b == 1 else REGIME_SMOOTH


def dos_estimate(params, budget=None, n_samples=100_000, n_bins=100, seed=0):
    """Histogram density of E_k over k ~ Uniform(-pi, pi]."""
    if n_samples < 10 * n_bins:
        raise ParameterError("need n_samples >= 10 * n_bins")
    budget = budget if budget is not None else default_budget(params)
    rng = np.random.default_rng(seed)
    # chunked for memory; chunk seeds derive deterministically from the rng
    chunk = 1 << 18
    energies = np.empty(n_samples)
    for start in range(0, n_samples, chunk):
        stop = min(start + chunk, n_samples)
        ks = rng.uniform(-np.pi, np.pi, size=stop - start)
        energies[start:stop] = eigenenergy(ks, params, budget)
    density, edges = np.histogram(energies, bins=n_bins, density=True)
    return DosEstimate(bin_edges=edges, density=density, n_samples=n_samples,
                       regime=_DOS_REGIME[classify_regime(params)])


def dos_nn_analytic(E, Omega):
    """Closed-form NN density of states (1/pi) / sqrt(2*Omega*E - E**2).

    Defined on the open band 0 < E < 2*Omega (integrable van Hove edges).
    """
    E_arr = np.atleast_1d(np.asarray(E, dtype=float))
    if np.any(E_arr <= 0.0) or np.any(E_arr >= 2.0 * Omega):
        raise DomainError("NN DOS defined only for 0 < E < 2*Omega")
    out = 1.0 / (np.pi * np.sqrt(2.0 * Omega * E_arr - E_arr ** 2))
    if np.isscalar(E) or np.ndim(E) == 0:
        return float(out[0])
    return out


def dos_nn_bin_masses(bin_edges, Omega):
    """Exact NN-band probability mass per bin, from the closed-form CDF.

    The CDF of E = Omega*(1 - cos k) with uniform k is
    (asin((E - Omega)/Omega) + pi/2) / pi on [0, 2*Omega].
    """
    edges = np.clip(np.asarray(bin_edges, dtype=float), 0.0, 2.0 * Omega)
    cdf = (np.arcsin((edges - Omega) / Omega) + np.pi / 2) / np.pi
    return np.diff(cdf)


def box_counting_dimension(params, budget=None, k_samples=1 << 17,
                           scale_ladder=DEFAULT_SCALE_LADDER):
    """Box-counting dimension of the normalized eigenenergy graph.

    The graph {(k, E_k)} over the zone is rescaled to the unit square and
    covered column-wise: at scale eps each of the 1/eps columns contributes
    the number of eps-cells spanned by [min y, max y] of the samples falling
    in it.  D_est is minus the least-squares slope of ln N(eps) vs ln eps.

    For the critical regime the self-affine prediction is D = 2 - mu.
    Returns (D_est, fit_r2); warns (does not fail) when the fit r2 < 0.99.
    """
    if k_samples < 1 << 10:
        raise ParameterError("k_samples too small for a stable count")
    scales = np.asarray(sorted(scale_ladder, reverse=True), dtype=float)
    if scales[-1] <= 0 or scales[0] >= 1:
        raise ParameterError("scales must lie in (0, 1)")
    if math.log10(scales[0] / scales[-1]) < 2.0:
        raise ParameterError("scale ladder must span >= 2 decades")

    budget = budget if budget is not None else default_budget(params)
    ks = np.linspace(-np.pi, np.pi, k_samples, endpoint=False) + np.pi / k_samples
    E = eigenenergy(ks, params, budget)
    y = E - E.min()
    span = y.max()
    if span > 0:
        y /= span
    x = (ks + np.pi) / (2.0 * np.pi)

    counts = []
    for eps in scales:
        n_cols = int(np.ceil(1.0 / eps))
        col = np.minimum((x / eps).astype(np.int64), n_cols - 1)
        cell = np.minimum((y / eps).astype(np.int64), n_cols - 1)
        lo = np.full(n_cols, np.iinfo(np.int64).max)
        hi = np.full(n_cols, -1)
        np.minimum.at(lo, col, cell)
        np.maximum.at(hi, col, cell)
        filled = hi >= 0
        counts.append(int(np.sum(hi[filled] - lo[filled] + 1)))

    ln_eps = np.log(scales)
    ln_n = np.log(counts)
    slope, intercept = np.polyfit(ln_eps, ln_n, 1)
    pred = slope * ln_eps + intercept
    ss_res = float(np.sum((ln_n - pred) ** 2))
    ss_tot = float(np.sum((ln_n - ln_n.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    if r2 < 0.99:
        warnings.warn(f"box-count fit r2 = {r2:.4f} < 0.99", RuntimeWarning)
    return float(-slope), r2
