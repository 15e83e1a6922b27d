"""Solved dynamics of the dissipative walk in the Fourier basis.

The master equation is diagonal in Fourier space and integrates in closed
form: rho(k1, k2, t) = rho(k1, k2, 0) * exp(F(k1, k2) * t) with

    F = (i/hbar) * [Omega*(C1 - C2) + hbar*omega_c*(T1 - T2)]
        - D * [(C1 - C2)**2 + (S1 - S2)**2]

where C, S are the lacunary sums, T = C**2 + S**2, and D = pi*alpha/(2*beta*
hbar) is the diffusion constant.  All the double sums of the generator
collapse onto C, S products; the direct double sums are kept only as test
oracles.  F(k, k) = 0 identically and Re F <= 0 everywhere.

Figure conventions: with BathParams.dimensionless(r_c) the time unit is 1/D
(D = 1) and the coherent rate r = Omega/hbar enters via WalkParams.Omega.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .quadrature import NODE_CAP, POINTS_PER_PANEL, GridPlan, QuadratureGrid, grid_from_plan, plan_nodes
from .weierstrass import SeriesBudget, WalkParams, default_budget, lacunary_cs, lacunary_tables

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class BathParams:
    """Dissipation data: coupling alpha, inverse temperature beta, cutoff omega_c.

    Derived rates: diffusion constant D = pi*alpha/(2*beta*hbar); with a walk
    of hopping energy Omega the dimensionless rates are r = (Omega/hbar)/D
    and r_c = omega_c/D, the axes used by all figure-style output.
    """

    alpha: float
    beta: float
    hbar: float = 1.0
    omega_c: float = 0.0

    def __post_init__(self):
        if self.alpha < 0:
            raise ParameterError("alpha must be >= 0")
        if not (self.beta > 0) or not (self.hbar > 0):
            raise ParameterError("beta and hbar must be > 0")
        if self.omega_c < 0:
            raise ParameterError("omega_c must be >= 0")

    @property
    def D(self):
        return np.pi * self.alpha / (2.0 * self.beta * self.hbar)

    def rate_r(self, params):
        if self.D == 0:
            raise ParameterError("r undefined for alpha = 0 (D = 0)")
        return (params.Omega / self.hbar) / self.D

    @property
    def rate_rc(self):
        if self.D == 0:
            raise ParameterError("r_c undefined for alpha = 0 (D = 0)")
        return self.omega_c / self.D

    def energy_rate(self, params):
        """r_e = hbar*omega_c / Omega, the effective-spectrum amplitude."""
        if params.Omega == 0:
            raise ParameterError("r_e undefined for Omega = 0")
        return self.hbar * self.omega_c / params.Omega

    @classmethod
    def dimensionless(cls, r_c=0.0):
        """Bath with D = 1 and hbar = 1, so t is measured in units of 1/D."""
        return cls(alpha=2.0 / np.pi, beta=1.0, hbar=1.0, omega_c=r_c)


def dimensionless_setup(b, A, r, r_c=0.0):
    """(WalkParams, BathParams) realizing the dimensionless rates (r, r_c)."""
    return WalkParams(A=A, b=b, Omega=r), BathParams.dimensionless(r_c)


@dataclass(frozen=True)
class PureWannier:
    """Initial pure state concentrated on lattice site l0."""

    l0: int = 0


@dataclass(frozen=True)
class CoherentFourier:
    """Initial uniform coherent block over Fourier modes [0, k_c].

    Endpoints belong to the support (the step function at 0 counts as 1);
    a measure-zero choice fixed for bit-reproducibility.
    """

    k_c: float

    def __post_init__(self):
        if not (0.0 < self.k_c <= np.pi):
            raise ParameterError("need 0 < k_c <= pi")


def initial_kernel(prep, k1, k2):
    """Initial Fourier-basis density-matrix kernel rho(k1, k2, 0)."""
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    if isinstance(prep, PureWannier):
        return np.exp(-1j * (k1 - k2) * prep.l0) / TWO_PI
    if isinstance(prep, CoherentFourier):
        inside = ((k1 >= 0.0) & (k1 <= prep.k_c) & (k2 >= 0.0) & (k2 <= prep.k_c))
        return inside.astype(complex) / prep.k_c
    raise ParameterError(f"unknown preparation {prep!r}")


class EvolutionKernel:
    """Precomputed lacunary tables + rates on a tensor quadrature grid.

    Construction is the one-off setup step; everything afterwards is pure.
    The full exponent matrix is never materialized: observables stream over
    row blocks via exponent_block / rho0_block.
    """

    def __init__(self, params, bath, prep, budget=None, *, quad_points=0,
                 quad_tol=1e-4, t_max=0.0, l_max=0):
        self.params = params
        self.bath = bath
        self.prep = prep
        requested = budget if budget is not None else default_budget(params)

        if isinstance(prep, CoherentFourier):
            interval = (0.0, prep.k_c)
        else:
            interval = (-np.pi, np.pi)
        interval_len = interval[1] - interval[0]

        # |Im F| <= (Omega/hbar) * 2*maxC + omega_c * maxT <= 2*Omega/hbar + omega_c
        imag_rate = 2.0 * params.Omega / bath.hbar + bath.omega_c
        n_explicit = quad_points or requested.quad_points
        if n_explicit:
            n_nodes = POINTS_PER_PANEL * max(1, round(n_explicit / POINTS_PER_PANEL))
            plan = plan_nodes(params, requested, interval_len, quad_tol=quad_tol,
                              max_offset=l_max, max_imag_rate=imag_rate,
                              t_max=t_max, cap=n_nodes, base=n_nodes)
        else:
            plan = plan_nodes(params, requested, interval_len, quad_tol=quad_tol,
                              max_offset=l_max, max_imag_rate=imag_rate, t_max=t_max)
            if plan.capped:
                warnings.warn(
                    f"quadrature capped at {plan.n_nodes} nodes "
                    f"(wanted {plan.needed_nodes}); aliasing bound "
                    f"{plan.aliasing_bound:.2e}", RuntimeWarning)
        self.plan = plan
        self.requested_budget = requested
        self.budget = SeriesBudget(n_terms=plan.n_freq_terms,
                                   series_tol=requested.series_tol,
                                   quad_points=plan.n_nodes)
        self.grid = grid_from_plan(plan, interval)
        self.tables = lacunary_tables(self.grid.nodes, params, self.budget)
        # quadrature error estimate: dropped series tail + unresolved-oscillation penalty
        self.eps_quad = max(plan.aliasing_bound, 1e-9)
        if not plan.oscillation_resolved:
            self.eps_quad = max(self.eps_quad, 1e-2)

    @property
    def n_nodes(self):
        return self.grid.n_nodes

    @property
    def lattice_center(self):
        """Site about which lattice phase factors are measured."""
        return self.prep.l0 if isinstance(self.prep, PureWannier) else 0

    def resolved_offset_limit(self):
        """Largest |l - center| the grid resolves at 6 nodes per oscillation."""
        lo, hi = self.grid.interval
        return self.n_nodes * TWO_PI / (6.0 * (hi - lo))

    def _exponent_from_tables(self, C1, S1, C2, S2):
        T1 = C1 ** 2 + S1 ** 2
        T2 = C2 ** 2 + S2 ** 2
        im = (self.params.Omega / self.bath.hbar) * (C1 - C2) + self.bath.omega_c * (T1 - T2)
        re = -self.bath.D * ((C1 - C2) ** 2 + (S1 - S2) ** 2)
        return re + 1j * im

    def exponent(self, k1, k2):
        """F(k1, k2) at arbitrary points, in 1/time units of the bath."""
        C1, S1 = lacunary_cs(k1, self.params, self.budget)
        C2, S2 = lacunary_cs(k2, self.params, self.budget)
        out = self._exponent_from_tables(np.asarray(C1), np.asarray(S1),
                                         np.asarray(C2), np.asarray(S2))
        if np.ndim(k1) == 0 and np.ndim(k2) == 0:
            return complex(out)
        return out

    def exponent_block(self, i0, i1):
        """Rows [i0, i1) of F over the tensor grid (complex, (i1-i0, n))."""
        C, S = self.tables.C, self.tables.S
        return self._exponent_from_tables(C[i0:i1, None], S[i0:i1, None],
                                          C[None, :], S[None, :])

    def decay_block(self, i0, i1):
        """Rows of Re F = -D[(C1-C2)**2 + (S1-S2)**2] (the purity exponent)."""
        C, S = self.tables.C, self.tables.S
        return -self.bath.D * ((C[i0:i1, None] - C[None, :]) ** 2
                               + (S[i0:i1, None] - S[None, :]) ** 2)

    def rho0_block(self, i0, i1):
        k = self.grid.nodes
        return initial_kernel(self.prep, k[i0:i1, None], k[None, :])

    def blocks(self, block=512):
        for i0 in range(0, self.n_nodes, block):
            yield i0, min(i0 + block, self.n_nodes)


def f_exponent(k1, k2, kernel):
    """Exponent F(k1, k2) of the kernel's solved evolution; F(k, k) = 0."""
    return kernel.exponent(k1, k2)


def rho_kernel(kernel, k1, k2, t):
    """Density-matrix kernel rho(k1, k2, t) = rho0 * exp(F t)."""
    if t < 0:
        raise ParameterError("t must be >= 0")
    return initial_kernel(kernel.prep, k1, k2) * np.exp(kernel.exponent(k1, k2) * t)
