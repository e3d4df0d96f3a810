"""Walk through the Bessel layer and the annulus eigenvalue g(nu, gamma).

Run with ``python3 demos/bessel_and_g.py``.
"""
import math

import numpy as np

from anyonbounds.neumann import bessel_ratio, g_oracle, g_value
from anyonbounds.special import bessel_jy, j_prime_zero, k_alpha

# %% Wronskian as a health check of J and Y together
for nu, x in [(0.0, 0.5), (0.3, 7.0), (2.5, 25.0)]:
    j, y, jp, yp = bessel_jy(nu, x)
    print(f"nu={nu:<4} x={x:<5} W*pi*x/2 = {(j * yp - jp * y) * math.pi * x / 2:.15f}")

# %% first zero of J'_nu and its elementary sandwich
print("\n nu    sqrt(2nu)   j'_nu     sqrt(2nu(1+nu))")
for nu in (0.1, 0.5, 1.0, 2.0, 3.0):
    z = j_prime_zero(nu).value
    print(f"{nu:4.1f}  {math.sqrt(2 * nu):9.6f}  {z:9.6f}  {math.sqrt(2 * nu * (1 + nu)):9.6f}")
print("(j'_1)^2 =", j_prime_zero(1.0).value ** 2)

# %% K_alpha grows like sqrt(2 alpha) for large alpha and starts at 2
for a in (0.0, 1 / 3, 1.0, 10.0, 1e4):
    print(f"K({a:g}) = {k_alpha(a):.12f}")

# %% g(nu, gamma) is where G(x) and G(gamma x) meet, G = J'/Y'
nu, gamma = 1.0, 0.5
root = g_value(nu, gamma)
xs = np.linspace(1.0, 1.8, 9)
print(f"\ng({nu}, {gamma}) = {root.value:.12f}  bracket {root.bracket_lo:.4f}..{root.bracket_hi:.4f}")
for x in xs:
    diff = bessel_ratio(nu, x) - bessel_ratio(nu, gamma * x)
    print(f"  x={x:.2f}  G(x) - G(gamma x) = {diff:+.3e}")

# %% the determinant root against a finite-difference eigenproblem
for n in (500, 1000, 2000, 4000):
    approx = g_oracle(nu, gamma, n).value
    print(f"grid {n:5d}: {approx:.10f}  rel. gap {abs(approx - root.value) / root.value:.2e}")

# %% limits: gamma -> 0 gives j'_nu, gamma -> 1 gives nu, both slowly for some nu
for nu in (0.2, 1.0, 2.0):
    print(f"nu={nu}: g(1e-4) - j' = {g_value(nu, 1e-4).value - j_prime_zero(nu).value:+.2e}, "
          f"g(0.999) - nu = {g_value(nu, 0.999).value - nu:+.2e}")
