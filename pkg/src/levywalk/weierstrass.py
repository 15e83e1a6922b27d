"""Lacunary series machinery of the scale-free lattice walk.

The hopping Hamiltonian is built from shift operators that superpose jumps
of length b**n with amplitude proportional to A**-n.  Every spectral object
of the model factors through the two lacunary sums

    C(k) = (A-1)/A * sum_n cos(b**n k) / A**n
    S(k) = (A-1)/A * sum_n sin(b**n k) / A**n

evaluated on the Brillouin zone (-pi, pi].  This module evaluates those sums
(and their weighted variants) with controlled truncation, plus the matrix
elements of the shift operators in the lattice-site basis.

Unit conventions: hbar = 1 throughout; Omega carries the energy scale.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._angles import angle_ladder, canonical_angle
from .errors import DomainError, ParameterError

_MIN_A = 1.0 + 1e-6
_DEFAULT_TOL = 1e-10
_MAX_AUTO_TERMS = 64


@dataclass(frozen=True)
class WalkParams:
    """Weierstrass triple (A, b, Omega) defining the walk Hamiltonian.

    A > 1 is the amplitude ratio between successive jump scales, integer
    b >= 1 the scale factor of the jump lengths, Omega the hopping energy.
    Omega = 0 is allowed (it is the infinite-temperature limit r = 0 of the
    dimensionless formulation).
    """

    A: float
    b: int
    Omega: float = 1.0

    def __post_init__(self):
        if not (self.A >= _MIN_A):
            raise ParameterError(f"A must be >= {_MIN_A} (weights singular as A -> 1), got {self.A}")
        if int(self.b) != self.b or self.b < 1:
            raise ParameterError(f"b must be an integer >= 1, got {self.b}")
        if not (self.Omega >= 0.0):
            raise ParameterError(f"Omega must be >= 0, got {self.Omega}")
        object.__setattr__(self, "b", int(self.b))

    def mu(self):
        """Scaling exponent ln A / ln b.  Undefined in the NN regime b = 1."""
        if self.b == 1:
            raise DomainError("mu is undefined for b = 1 (NN regime)")
        return math.log(self.A) / math.log(self.b)


@dataclass(frozen=True)
class SeriesBudget:
    """Truncation order and tolerances for the lacunary series.

    The truncated tail of any weighted sum here is bounded by A**-n_terms.
    quad_points = 0 lets quadrature consumers size their own grids.
    """

    n_terms: int
    series_tol: float = _DEFAULT_TOL
    quad_points: int = 0

    def __post_init__(self):
        if self.n_terms < 1:
            raise ParameterError("n_terms must be >= 1")
        if not (self.series_tol > 0):
            raise ParameterError("series_tol must be > 0")

    def highest_frequency(self, params):
        """Largest angular frequency b**(n_terms-1) retained by this budget."""
        return params.b ** (self.n_terms - 1)


def auto_truncation(params, tol):
    """Smallest truncation order N (>= 1) with A**-N <= tol."""
    if not (tol > 0):
        raise ParameterError("tol must be > 0")
    n = max(1, math.ceil(-math.log(tol) / math.log(params.A)))
    while params.A ** -n > tol:
        n += 1
    while n > 1 and params.A ** -(n - 1) <= tol:
        n -= 1
    return n


def default_budget(params, tol=_DEFAULT_TOL):
    """Budget sized by auto_truncation, capped at 64 terms."""
    return SeriesBudget(n_terms=min(auto_truncation(params, tol), _MAX_AUTO_TERMS),
                        series_tol=tol)


def series_weights(params, n_terms):
    """Normalized lacunary weights w_n = (A-1)/A * A**-n, n < n_terms."""
    n = np.arange(n_terms)
    return (params.A - 1.0) / params.A * params.A ** -n.astype(float)


@dataclass(frozen=True)
class LacunaryTables:
    """C(k), S(k) tabulated on a fixed set of reduced angles."""

    k_nodes: np.ndarray
    C: np.ndarray
    S: np.ndarray
    weights: np.ndarray

    @property
    def T(self):
        """C**2 + S**2, the collapsed double lacunary sum."""
        return self.C ** 2 + self.S ** 2


def _resolve_budget(params, budget):
    return budget if budget is not None else default_budget(params)


def lacunary_cs(k, params, budget=None):
    """Evaluate (C(k), S(k)) truncated at budget.n_terms.

    Accepts scalars or arrays; angles are canonicalized to (-pi, pi] and the
    lacunary angles b**n k are reduced in extended precision.
    """
    budget = _resolve_budget(params, budget)
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    w = series_weights(params, budget.n_terms)
    C = np.zeros_like(k_arr)
    S = np.zeros_like(k_arr)
    for n, (c, s) in enumerate(angle_ladder(k_arr, params.b, budget.n_terms)):
        C += w[n] * c
        S += w[n] * s
    if np.isscalar(k) or np.ndim(k) == 0:
        return float(C[0]), float(S[0])
    return C, S


def lacunary_tables(k_nodes, params, budget=None):
    k_nodes = np.asarray(k_nodes, dtype=float)
    budget = _resolve_budget(params, budget)
    C, S = lacunary_cs(k_nodes, params, budget)
    return LacunaryTables(k_nodes=k_nodes, C=np.atleast_1d(C), S=np.atleast_1d(S),
                          weights=series_weights(params, budget.n_terms))


def eigenenergy(k, params, budget=None):
    """Continuous eigenenergy Omega * (1 - C(k)) of the walk Hamiltonian."""
    C, _ = lacunary_cs(k, params, budget)
    return params.Omega * (1.0 - C)


def effective_eigenenergy(k, params, bath, budget=None):
    """Eigenenergy shifted by the bath-induced term: E_k - hbar*omega_c*(C**2 + S**2).

    ``bath`` only needs attributes hbar and omega_c.  The double lacunary sum
    of the shift-operator product collapses to C**2 + S**2 exactly.
    """
    C, S = lacunary_cs(k, params, budget)
    return params.Omega * (1.0 - C) - bath.hbar * bath.omega_c * (C ** 2 + S ** 2)


def derivative_sum(k, params, order):
    """Order-truncated sum (A-1)/A * sum_n (b/A)**n sin(b**n k).

    This is dE_k/dk / Omega (and the pseudo-momentum eigenvalue divided by
    mass*Omega).  For b >= A the sum has no limit; callers inspect the
    per-term growth via :func:`eigenenergy_derivative`.
    """
    if order < 1:
        raise ParameterError("order must be >= 1")
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    ratio = params.b / params.A
    pref = (params.A - 1.0) / params.A
    total = np.zeros_like(k_arr)
    for n, (_, s) in enumerate(angle_ladder(k_arr, params.b, order)):
        total += pref * ratio ** n * s
    if np.isscalar(k) or np.ndim(k) == 0:
        return float(total[0])
    return total


def eigenenergy_derivative(k, params, order):
    """Partial sum of dE_k/dk plus a flag for non-decaying term magnitudes.

    Returns (value, growth_flag).  The flag is set when the late-order term
    magnitudes (b/A)**n |sin(b**n k)| fail to decay relative to the early
    ones, which is the dynamic signature of the b >= A critical regime where
    the derivative series diverges.  Divergence is reported, never raised.
    """
    if order < 1:
        raise ParameterError("order must be >= 1")
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    ratio = params.b / params.A
    pref = (params.A - 1.0) / params.A
    total = np.zeros_like(k_arr)
    terms = np.empty((order, k_arr.size))
    for n, (_, s) in enumerate(angle_ladder(k_arr, params.b, order)):
        total += pref * ratio ** n * s
        terms[n] = ratio ** n * np.abs(s)
    value = params.Omega * total

    if order < 6:
        flag = np.zeros(k_arr.size, dtype=bool)
    else:
        third = order // 3
        early = terms[:third].max(axis=0)
        late = terms[order - third:].max(axis=0)
        # decay by at least half across the window = convergent tail
        flag = ~(late < 0.5 * early)
        flag &= terms.max(axis=0) > 1e-300  # k = 0: every term vanishes
    if np.isscalar(k) or np.ndim(k) == 0:
        return float(value[0]), bool(flag[0])
    return value, flag


def pseudo_momentum_eigenvalue(k, params, mass, budget=None):
    """Momentum-like eigenvalue mass*Omega * (A-1)/A * sum_n (b/A)**n sin(b**n k).

    Only defined below the threshold b < A (units hbar = 1).
    """
    budget = _resolve_budget(params, budget)
    if params.b >= params.A:
        raise DomainError(
            f"pseudo-momentum eigenvalue undefined for b >= A (b={params.b}, A={params.A})")
    return mass * params.Omega * derivative_sum(k, params, budget.n_terms)


_KINDS = ("a", "a_dagger", "a_dagger_a", "a_a_dagger")


def shift_matrix_element(l1, l2, kind, params, budget=None):
    """Lattice-basis matrix element <l1| op |l2> of a shift operator product.

    kind 'a' lowers by b**n, 'a_dagger' raises; the quadratic kinds are the
    truncated double sums over (n1, n2) with the offset constraint
    l1 - l2 = b**n1 - b**n2 (and its transpose).  Jump lengths b**n are exact
    integers, so the Kronecker constraints are tested exactly.
    """
    if kind not in _KINDS:
        raise ParameterError(f"kind must be one of {_KINDS}")
    budget = _resolve_budget(params, budget)
    n_terms = budget.n_terms
    diff = int(l1) - int(l2)
    w0 = (params.A - 1.0) / params.A
    powers = [params.b ** n for n in range(n_terms)]

    if kind in ("a", "a_dagger"):
        target = -diff if kind == "a" else diff
        return w0 * math.fsum(params.A ** -n for n, p in enumerate(powers) if p == target)

    sign = 1 if kind == "a_dagger_a" else -1
    acc = [params.A ** -(n1 + n2)
           for n1, p1 in enumerate(powers)
           for n2, p2 in enumerate(powers)
           if sign * (p1 - p2) == diff]
    return w0 ** 2 * math.fsum(acc)


def shift_matrix_window(kind, l_min, l_max, params, budget=None):
    """Dense matrix of shift_matrix_element over the window [l_min, l_max]**2.

    The element depends only on l1 - l2; weights are accumulated per offset
    and broadcast along the diagonals.
    """
    if kind not in _KINDS:
        raise ParameterError(f"kind must be one of {_KINDS}")
    budget = _resolve_budget(params, budget)
    n_terms = budget.n_terms
    w0 = (params.A - 1.0) / params.A
    powers = [params.b ** n for n in range(n_terms)]
    span = l_max - l_min

    by_offset = {}
    if kind in ("a", "a_dagger"):
        sgn = -1 if kind == "a" else 1
        for n, p in enumerate(powers):
            if p <= span:
                d = sgn * p
                by_offset[d] = by_offset.get(d, 0.0) + w0 * params.A ** -n
    else:
        sgn = 1 if kind == "a_dagger_a" else -1
        for n1, p1 in enumerate(powers):
            for n2, p2 in enumerate(powers):
                d = sgn * (p1 - p2)
                if abs(d) <= span:
                    by_offset[d] = by_offset.get(d, 0.0) + w0 ** 2 * params.A ** -(n1 + n2)

    ls = np.arange(l_min, l_max + 1)
    diff = np.subtract.outer(ls, ls)
    mat = np.zeros_like(diff, dtype=float)
    for d, val in by_offset.items():
        mat[diff == d] = val
    return mat


def scaling_residual(k, params, budget=None):
    """Defect of the renormalization relation C(k) = C(bk)/A + (A-1)/A cos k.

    Bounded by 2 * A**-n_terms for the truncated series: the two sides are
    truncations of the same sum shifted by one term, so both are evaluated
    from a single angle ladder (C_N(bk) uses the angles of terms 1..N).
    """
    budget = _resolve_budget(params, budget)
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    n = budget.n_terms
    w = series_weights(params, n)
    cos_terms = [c for c, _ in angle_ladder(k_arr, params.b, n + 1)]
    C_k = sum(w[i] * cos_terms[i] for i in range(n))
    C_bk = sum(w[i] * cos_terms[i + 1] for i in range(n))
    w0 = (params.A - 1.0) / params.A
    res = np.abs(C_k - C_bk / params.A - w0 * cos_terms[0])
    if np.isscalar(k) or np.ndim(k) == 0:
        return float(res[0])
    return res
