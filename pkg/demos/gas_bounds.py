"""Closed-form energy bounds for the homogeneous gas, from f(t) up to e(alpha, gamma_bar)."""
import math
from fractions import Fraction

from anyonbounds.bounds import (GasParameters, e_lr, e_sr, f_ideal, gas_ideal_lower,
                                gas_lower_bound, scattering_length, soft_core_gas_bound)
from anyonbounds.special import j_prime_zero
from anyonbounds.statistics import alpha_star

# %% the two-particle function f(t) and its sandwich t/6 <= f <= 2 pi t
t1 = j_prime_zero(1.0).value ** 2
fixed = f_ideal(t1, "projection-fixed")
print(f"t = (j'_1)^2 = {t1:.6f}")
print(f"fixed projection: H = {fixed.parameters['operator']:.4f} >= t/3 = {t1 / 3:.4f}")
for t in (1e-4, 0.1, 1.0, t1):
    rep = f_ideal(t)
    print(f"t={t:<8.4g} f={rep.value:.6g}  ({rep.parameters['method']}) "
          f"f/(2 pi t)={rep.value / (2 * math.pi * t):.4f}")

# %% which alphas keep a long-range repulsion in the limit
for a in (Fraction(1, 3), Fraction(2, 3), Fraction(3, 7), Fraction(1), Fraction(4, 5)):
    print(f"alpha={a}: alpha_star={alpha_star(a)}, e(alpha, 0) >= {gas_ideal_lower(a).value:.5f}")

# %% local exclusion pieces
print(f"\ne_SR(1, 0.5) = {e_sr(1, 0.5).value:.6f}   e_LR(1, 0.01) = {e_lr(1, 0.01).value:.3e}")
print(f"scattering length a_R/R at alpha=1: {scattering_length(1):.6f}")

# %% the universal bound with the default and the illustrative constants
print("\n gamma_bar   C=1/288 default     C=1, c=1/sqrt3")
for gb in (1e-3, 1e-2, 0.1, 1.0, 2.0, 3.0):
    default = gas_lower_bound(GasParameters(Fraction(1, 3), gb)).value
    shown = gas_lower_bound(GasParameters(Fraction(1, 3), gb, 1.0, 1 / math.sqrt(3))).value
    print(f"{gb:10.3g}   {default:16.6e}   {shown:16.6e}")

# %% soft cores: almost the full mean-field value 2 pi |alpha| for tiny alpha
for eps in (0.2, 0.05, 0.01):
    rep = soft_core_gas_bound(1e-30, 1.0, eps)
    print(f"eps={eps}: ratio {rep.value:.5f} (>= 1 - 10 eps = {1 - 10 * eps:.2f})")
print("outside the validity region:", soft_core_gas_bound(1e-11, 1.0, 0.01).regime)
