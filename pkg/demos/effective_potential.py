"""The effective pair potential rho(r) for a random background of flux disks.

Shows the counting function, the zeros of rho and the intervals around them,
then runs the two radial inequalities on the same configuration.
"""
from fractions import Fraction

import numpy as np

from anyonbounds.geometry import sample_config
from anyonbounds.potential import (PotentialProfile, optimize_smearing, verify_main_radial_bound,
                                   verify_projection_lemma)

config = sample_config(30, 20.0, seed=42)
alpha = Fraction(3, 7)
prof = PotentialProfile(config, alpha)
print(f"{config.n} particles, R = {config.disk_radius}, window {prof.window}")
print(f"alpha = {alpha}, alpha_N = {prof.alpha_n:.6f}")

# %% a coarse look at N, Phi and rho
r = np.linspace(0.0, 20.0, 11)
tr = prof.trace(r)
for row in zip(*(tr[k] for k in ("r", "N", "Phi", "rho"))):
    print("r={:5.1f}  N={:8.4f}  Phi={:8.4f}  rho={:.4f}".format(*row))

# %% zeros of rho sit where N crosses (q/alpha - 1/2)
structure = prof.extract_structure()
print("\n  q      r_q   z_minus    z_plus   |I_q|")
for iv in structure.intervals:
    if iv.complete:
        print(f"{iv.q:3d} {iv.r_q:8.4f} {iv.z_minus:9.4f} {iv.z_plus:9.4f} {iv.length:7.4f}")

# %% good and bad intervals for the optimal smearing constant
best = optimize_smearing(1.0)
cls = prof.classify_intervals(structure, best.smear_C)
print(f"\nC* = {best.smear_C:.5f}: {len(cls.good)} good, {len(cls.bad)} bad intervals, "
      f"worst bad coverage {cls.worst_bad_fraction:.3f} (bound {cls.bad_fraction_bound:.3f})")

# %% the radial quadratic-form bound
check = verify_main_radial_bound(prof, kappa=0.5)
print(f"\nradial bound: lhs {check.lhs:.6e} >= rhs {check.rhs:.6e}: {check.ok}")

# %% the projection step on one interval above R
iv = next(iv for iv in structure.intervals if iv.complete and iv.z_minus >= config.disk_radius)
proj = verify_projection_lemma(prof.rho, iv.z_minus, iv.z_plus, 0.5, config.disk_radius)
print(f"projection on I_{iv.q}: eigenvalue {proj.lhs:.5f} >= {proj.rhs:.5f}: {proj.ok}")
