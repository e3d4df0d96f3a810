"""Lowest Neumann eigenvalue of the radial Bessel operator on an annulus.

g(nu, gamma)^2 is the smallest positive lambda for which
-u'' - u'/r + nu^2 u / r^2 = lambda u on [gamma, 1] has a solution with
u'(gamma) = u'(1) = 0. It is found as the root of a cross-product of Bessel
derivatives; a finite-difference eigensolver serves as an independent check.
"""
import math
from dataclasses import dataclass

import numpy as np

from .config import TOL, DomainError
from .numerics import BracketError, EigenResult, bracketed_root, radial_ground_state
from .special import bessel_jy, j_prime_zero


def determinant(nu, gamma, sqrt_lambda):
    """J'_nu(x gamma) Y'_nu(x) - Y'_nu(x gamma) J'_nu(x) at x = sqrt_lambda."""
    x = float(sqrt_lambda)
    _, _, jp_in, yp_in = bessel_jy(nu, gamma * x)
    _, _, jp_out, yp_out = bessel_jy(nu, x)
    return jp_in * yp_out - yp_in * jp_out


def bessel_ratio(nu, x):
    """G_nu(x) = J_nu'(x) / Y_nu'(x); increasing on (0, nu), decreasing after."""
    _, _, jp, yp = bessel_jy(nu, x)
    return jp / yp


def _check(nu, gamma):
    if not (math.isfinite(nu) and math.isfinite(gamma)) or nu < 0 or gamma < 0:
        raise DomainError(f"need finite nu >= 0 and gamma >= 0, got nu={nu!r}, gamma={gamma!r}")


def g_value(nu, gamma):
    """g(nu, gamma) from the determinant equation.

    Conventions: g = nu for gamma >= 1, g = 0 for nu = 0, and g = j'_nu at
    gamma = 0. Otherwise the root lies in (nu, min(j'_nu, nu/gamma)). The
    equation is solved in the ratio form G(x) = G(gamma x), which stays well
    scaled as gamma -> 0 because G(gamma x) merely underflows towards 0.
    """
    nu = float(nu)
    gamma = float(gamma)
    _check(nu, gamma)
    if gamma >= 1.0:
        return EigenResult(nu, nu, nu, 0.0, 0, {"branch": "outside"})
    if nu == 0.0:
        return EigenResult(0.0, 0.0, 0.0, 0.0, 0, {"branch": "nu=0"})
    jp = j_prime_zero(nu).value
    if gamma < 1e-280:
        return EigenResult(jp, jp, jp, 0.0, 0, {"branch": "gamma=0"})
    lo, hi = nu, min(jp, nu / gamma)

    def inner(x):
        # G(y) ~ y^(2 nu) near 0; overflow in Y' there means it underflowed
        val = bessel_ratio(nu, gamma * x)
        return val if math.isfinite(val) else 0.0

    def h(x):
        if x == jp:
            # J'_nu(j'_nu) = 0 exactly; the rounded G there can swamp a tiny G(gamma x)
            return -inner(x)
        return bessel_ratio(nu, x) - inner(x)

    try:
        res = bracketed_root(h, lo, hi, xtol=1e-3 * min(TOL.root_abs, lo))
    except BracketError as exc:
        raise BracketError(f"g({nu}, {gamma}): {exc}") from exc
    # the derivation assumes Y_nu' keeps its sign below the root
    probe = np.linspace(gamma * lo, hi, 17)
    if any(bessel_jy(nu, p)[3] <= 0 for p in probe):
        raise ArithmeticError(f"Y'_{nu} changes sign on [{gamma * lo}, {hi}]")
    return EigenResult(res.value, res.bracket_lo, res.bracket_hi, res.residual,
                       res.iterations, {"branch": "root",
                                        "determinant": determinant(nu, gamma, res.value)})


def g_oracle(nu, gamma, grid_points=4000):
    """Finite-difference estimate of g(nu, gamma) on the annulus [gamma, 1].

    Minimizes  int (u'^2 + nu^2 u^2 / r^2) r dr  over  int u^2 r dr  on a
    uniform grid with natural boundary rows.
    """
    nu = float(nu)
    gamma = float(gamma)
    _check(nu, gamma)
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"oracle needs 0 < gamma < 1, got {gamma!r}")
    if grid_points < 200:
        raise DomainError(f"oracle needs at least 200 grid points, got {grid_points}")
    r = np.linspace(gamma, 1.0, int(grid_points))
    mid = 0.5 * (r[1:] + r[:-1])
    lam, _, residual = radial_ground_state(r, mid, nu * nu / r, r)
    value = math.sqrt(max(lam, 0.0))
    return EigenResult(value, value, value, residual, 1, {"grid_points": int(grid_points)})


@dataclass(frozen=True)
class AnnulusEigenproblem:
    nu: float
    gamma: float
    grid_points: int = 4000

    def solve(self):
        return g_value(self.nu, self.gamma)

    def oracle(self):
        return g_oracle(self.nu, self.gamma, self.grid_points)
