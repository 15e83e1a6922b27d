"""Composite Gauss-Legendre quadrature over Brillouin-zone intervals.

The kernel integrands combine three oscillation sources: lacunary series
frequencies up to b**(N-1), lattice phase factors exp(i*k*l), and the time
factor exp(i*Im(F)*t).  Node counts are sized so every retained frequency
gets >= 6 nodes per oscillation; series terms beyond what the grid resolves
are dropped (their amplitude is bounded by A**-n, which is recorded as the
aliasing bound instead of letting them fold onto wrong frequencies).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .weierstrass import auto_truncation

TWO_PI = 2.0 * np.pi
NODE_CAP = 4096
BASE_NODES = 256
POINTS_PER_PANEL = 16


@dataclass(frozen=True)
class QuadratureGrid:
    """Composite Gauss-Legendre rule on one axis of the zone."""

    panels: int
    points_per_panel: int
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple
    rule: str = "gauss_legendre_composite"

    @property
    def n_nodes(self):
        return self.nodes.size

    @classmethod
    def build(cls, interval=(-np.pi, np.pi), panels=16, points_per_panel=POINTS_PER_PANEL):
        lo, hi = interval
        if not (hi > lo):
            raise ParameterError("empty quadrature interval")
        if panels < 1 or points_per_panel < 2:
            raise ParameterError("need >= 1 panel and >= 2 points per panel")
        x, w = np.polynomial.legendre.leggauss(points_per_panel)
        edges = np.linspace(lo, hi, panels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * w[None, :]).ravel()
        return cls(panels=panels, points_per_panel=points_per_panel,
                   nodes=nodes, weights=weights, interval=(float(lo), float(hi)))


@dataclass(frozen=True)
class GridPlan:
    """Resolved node count plus the effective series truncation it supports."""

    n_nodes: int
    n_freq_terms: int      # series terms whose frequency the grid resolves
    aliasing_bound: float  # A**-n_freq_terms, error from dropped tail
    needed_nodes: int      # pre-cap requirement
    oscillation_resolved: bool

    @property
    def capped(self):
        return self.needed_nodes > self.n_nodes


def plan_nodes(params, budget, interval_len, quad_tol=1e-4, max_offset=0,
               max_imag_rate=0.0, t_max=0.0, cap=NODE_CAP, base=BASE_NODES):
    """Size one quadrature axis for the kernel integrands.

    max_offset is the largest lattice distance |l - l0| the caller will
    request, max_imag_rate a bound on |Im F| so that time oscillations of
    exp(i*Im(F)*t_max) are resolved.
    """
    frac = interval_len / TWO_PI
    n_target = min(budget.n_terms, auto_truncation(params, quad_tol))
    want = [base,
            6.0 * params.b ** (n_target - 1) * frac,
            6.0 * max_offset * frac,
            6.0 * 2.0 * max_imag_rate * t_max / TWO_PI]
    needed = int(math.ceil(max(want)))
    n_nodes = min(cap, POINTS_PER_PANEL * math.ceil(needed / POINTS_PER_PANEL))

    n_freq = budget.n_terms
    while n_freq > 1 and 6.0 * params.b ** (n_freq - 1) * frac > n_nodes:
        n_freq -= 1
    osc_ok = n_nodes >= want[2] and n_nodes >= want[3]
    return GridPlan(n_nodes=n_nodes, n_freq_terms=n_freq,
                    aliasing_bound=params.A ** -n_freq,
                    needed_nodes=needed, oscillation_resolved=osc_ok)


def grid_from_plan(plan, interval):
    panels = max(1, plan.n_nodes // POINTS_PER_PANEL)
    return QuadratureGrid.build(interval=interval, panels=panels,
                                points_per_panel=POINTS_PER_PANEL)
