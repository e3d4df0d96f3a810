"""Lower bounds for the ground-state energy of the 2D extended anyon gas.

Submodules
----------
special     Bessel functions J, Y, I, the zero j'_nu and the constant K_alpha
statistics  fractionality measures alpha_N and alpha_*
neumann     annulus Neumann eigenvalue g(nu, gamma)
geometry    disk intersections, one-particle flux profile, configurations
potential   counting function, effective potential and its zero structure
bounds      closed-form energy bounds and the ideal-gas function f(t)
"""
from .config import TOL, Tolerances
from .special import (EigenResult, bessel_i, bessel_j, bessel_j_prime,
                      bessel_y, bessel_y_prime, j_prime_zero, k_alpha)
from .statistics import alpha_n, alpha_n_convergence, alpha_star, parse_alpha
from .neumann import determinant, g_oracle, g_value
from .geometry import (ParticleConfig, disk_intersection_area, flux_fraction,
                       profile, profile_lower, profile_upper, sample_config)
from .potential import (PotentialProfile, beta_kappa, c_kappa, optimize_smearing,
                        verify_main_radial_bound, verify_projection_lemma)
from .bounds import (BoundReport, GasParameters, e_lr, e_sr, f_ideal,
                     gas_ideal_lower, gas_lower_bound, lt_coefficients,
                     scattering_length, soft_core_gas_bound, temple_soft_core)

__version__ = "0.1.0"
