"""Open quantum Levy walk on a 1D lattice.

Library layout mirrors the physics: `weierstrass` evaluates the lacunary
series behind the scale-free Hamiltonian, `spectral` its density of states
and fractality, `evolution` the solved Fourier-basis dynamics, `observables`
the derived probabilities/moments, `classical` the NN-walk baseline, and
`analysis` the asymptotic tail fits.  `cli` exposes one subcommand per
figure-style dataset.
"""

__version__ = "0.1.0"

from .errors import (DivergenceError, DomainError, LevyWalkError,
                     ParameterError, ResolutionError, WindowOverflowError)
from .weierstrass import (LacunaryTables, SeriesBudget, WalkParams,
                          auto_truncation, default_budget, eigenenergy,
                          eigenenergy_derivative, effective_eigenenergy,
                          lacunary_cs, lacunary_tables,
                          pseudo_momentum_eigenvalue, scaling_residual,
                          series_weights, shift_matrix_element,
                          shift_matrix_window)
from .spectral import (DosEstimate, box_counting_dimension, classify_regime,
                       dos_estimate, dos_nn_analytic)
from .evolution import (BathParams, CoherentFourier, EvolutionKernel,
                        PureWannier, dimensionless_setup, f_exponent,
                        initial_kernel, rho_kernel)
from .quadrature import QuadratureGrid
from .observables import (ObservableSeries, dissipative_rate_sum,
                          localized_correlation, log_time_grid,
                          lattice_moments, mean_position,
                          mean_pseudo_momentum_coherent, purity,
                          pseudo_momentum_second_moment, return_probability,
                          second_moment_closed, second_moment_quadrature,
                          series_of, site_probability, site_profile)
from .classical import (ClassicalWalk, classical_characteristic,
                        classical_localized_probability,
                        classical_relaxation_density,
                        classical_weierstrass_moment_finite)
from .analysis import TailFit, detect_trend_change, tail_exponent, xi_vs_A_scan
