"""Numerical tolerances shared by every module.

All defaults live in one frozen record so that a caller can see, and if
needed override, every threshold the library uses.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    bessel_rel: float = 1e-10
    root_abs: float = 1e-10
    quad_abs: float = 1e-10
    level_abs: float = 1e-9
    rho_one_abs: float = 1e-6
    shape_slack: float = 1e-12
    concavity_rel: float = 1e-10
    scan_step_over_R: float = 1.0 / 64
    sup_step_over_R: float = 1.0 / 256
    optimizer_grid_step: float = 0.01
    golden_xtol: float = 1e-9


TOL = Tolerances()


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of a formula."""
