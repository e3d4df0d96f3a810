"""Closed-form energy lower bounds.

Energies are dimensionless, in units of the mean density (the convention
e(alpha, gamma_bar)). Each evaluator returns a :class:`BoundReport` whose
``subterms`` add up to ``value``.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from .config import TOL, DomainError
from .neumann import g_value
from .numerics import golden_section_max
from .special import j_prime_zero, k_alpha
from .statistics import alpha_n, alpha_star

SQRT2 = math.sqrt(2.0)
LR_CONSTANT = 5.3 / math.sqrt(8.0) * 1e-4
GAS_CONSTANT = 1.0 / 288.0
FIXED_KAPPA = FIXED_ETA = 0.68


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, (np.floating, np.integer)):
        return _jsonable(v.item())
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class BoundReport:
    """A bound together with the pieces that produced it."""
    value: float
    regime: str
    subterms: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.value >= 0:
            raise ArithmeticError(f"negative or undefined bound {self.value!r} ({self.regime})")
        if self.subterms and sum(self.subterms.values()) != self.value:
            raise ArithmeticError("subterms do not add up to the reported value")

    @classmethod
    def from_terms(cls, regime, subterms, **parameters):
        return cls(sum(subterms.values()), regime, dict(subterms), parameters)

    def __float__(self):
        return float(self.value)

    def to_dict(self):
        return _jsonable({"value": self.value, "regime": self.regime,
                          "subterms": self.subterms, "parameters": self.parameters})


@dataclass(frozen=True)
class GasParameters:
    alpha: object
    gamma_bar: float
    constant_C: float = GAS_CONSTANT
    constant_c: float = LR_CONSTANT

    def __post_init__(self):
        if not (math.isfinite(self.gamma_bar) and self.gamma_bar >= 0):
            raise DomainError(f"gamma_bar must be finite and >= 0, got {self.gamma_bar!r}")


def _fractionality(alpha, n_total):
    """alpha_N for finite n_total, alpha_* otherwise."""
    if n_total is None or n_total == math.inf:
        return alpha_star(alpha)
    return alpha_n(alpha, int(n_total))


# -- local exclusion ------------------------------------------------------

def e_sr(alpha, gamma, n=1):
    """Short-range exclusion energy per unit box for n extra particles.

    gamma < sqrt 2:  |a| min((1 - gamma^2/2)^-1, K/2) / (K + 2|a| ln(sqrt2/gamma))
    gamma >= sqrt 2: 2 |a| n / gamma^2
    """
    a = abs(float(alpha))
    gamma = float(gamma)
    if gamma < 0 or not math.isfinite(gamma):
        raise DomainError(f"gamma must be finite and >= 0, got {gamma!r}")
    if a == 0.0:
        return BoundReport.from_terms("free", {"short_range": 0.0})
    K = k_alpha(a)
    if gamma >= SQRT2:
        return BoundReport.from_terms("large-gamma", {"short_range": 2.0 * a * n / gamma ** 2},
                                      K_alpha=K, n=n)
    if gamma == 0.0:
        return BoundReport.from_terms("small-gamma", {"short_range": 0.0}, K_alpha=K)
    weight = min(1.0 / (1.0 - 0.5 * gamma * gamma), 0.5 * K)
    log = max(0.5 * math.log(2.0) - math.log(gamma), 0.0)
    return BoundReport.from_terms("small-gamma", {"short_range": a * weight / (K + 2.0 * a * log)},
                                  K_alpha=K)


def scattering_length(alpha, R=1.0):
    """Soft-disk scattering length R exp(-K_alpha / (2|alpha|))."""
    a = abs(float(alpha))
    if a == 0.0:
        raise DomainError("the scattering length is undefined for alpha = 0")
    return R * math.exp(-k_alpha(a) / (2.0 * a))


def temple_soft_core(alpha, gamma, n, kappa):
    """Temple lower bound for n particles in a unit box with soft cores.

    Needs pi^2 kappa / (1 - kappa) > 2 pi |a| n (n - 1); otherwise the
    report carries value 0 and regime ``precondition-failed``.
    """
    a = abs(float(alpha))
    gamma = float(gamma)
    if not 0.0 < kappa < 1.0:
        raise DomainError(f"kappa must lie in (0, 1), got {kappa!r}")
    if n < 2:
        raise DomainError(f"need n >= 2 particles, got {n!r}")
    pairs = n * (n - 1)
    gap = math.pi ** 2 * kappa / (1.0 - kappa) - 2.0 * math.pi * a * pairs
    params = {"kappa": kappa, "n": n, "gap": gap}
    if gap <= 0.0:
        return BoundReport.from_terms("precondition-failed", {"temple": 0.0}, **params)
    if a == 0.0 or gamma == 0.0:
        return BoundReport.from_terms("soft-core", {"temple": 0.0}, **params)
    support = max(1.0 - 2.0 * gamma, 0.0) ** 2
    variance = max(1.0 - 2.0 * a * pairs / (gamma * gamma * gap), 0.0)
    value = 2.0 * math.pi * a * (1.0 - kappa) * support * pairs * variance
    return BoundReport.from_terms("soft-core", {"temple": value}, support_factor=support,
                                  variance_factor=variance, **params)


def e_lr(alpha, gamma, n_total=None, c=LR_CONSTANT):
    """Long-range exclusion energy (pi/24) g(c alpha_N, 12 gamma)^2 (1 - 12 gamma)_+^3."""
    gamma = float(gamma)
    if gamma < 0 or not math.isfinite(gamma):
        raise DomainError(f"gamma must be finite and >= 0, got {gamma!r}")
    frac = _fractionality(alpha, n_total)
    nu = c * float(frac)
    params = {"alpha_frac": frac, "nu": nu, "c": c}
    if gamma >= 1.0 / 12.0:
        return BoundReport.from_terms("cutoff", {"long_range": 0.0}, **params)
    g = g_value(nu, 12.0 * gamma).value
    value = math.pi / 24.0 * g * g * (1.0 - 12.0 * gamma) ** 3
    return BoundReport.from_terms("long-range", {"long_range": value}, g=g, **params)


# -- the ideal two-particle function f(t) --------------------------------

def _shape(eta):
    return 1.0 + 0.5 * eta * eta - 4.0 * eta / 3.0


def _second_moment(eta):
    return 16.0 / (3.0 * eta) + 4.0 * np.log(eta) - 5.0


def projection_value(t, kappa, eta):
    """Operator bound from the projection method with mu chosen to balance
    the two terms. Returns (H, mu); broadcasts over kappa and eta."""
    kappa = np.asarray(kappa, dtype=float)
    eta = np.asarray(eta, dtype=float)
    a = 4.0 * math.pi * t * (1.0 - kappa) * _shape(eta)
    b = 4.0 * t * (1.0 - kappa) / (eta * eta)
    B = kappa * math.pi ** 2 + b - a
    root = np.sqrt(B * B + 4.0 * a * b)
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = np.where(B >= 0, 2.0 * b / (B + root), (root - B) / (2.0 * a))
    mu = np.nan_to_num(mu, nan=0.0)
    return (1.0 - mu) * a, mu


def projection_terms(t, mu, kappa, eta):
    """The two competing terms of the projection bound at given (mu, kappa, eta)."""
    first = (1.0 - mu) * 4.0 * math.pi * t * (1.0 - kappa) * _shape(eta)
    second = kappa * math.pi ** 2 + (1.0 - 1.0 / mu) * 4.0 * t * (1.0 - kappa) / eta ** 2
    return first, second


def temple_value(t, kappa, eta):
    """Temple bound on the operator; -inf where kappa pi <= 4 t (1 - kappa) s."""
    kappa = np.asarray(kappa, dtype=float)
    eta = np.asarray(eta, dtype=float)
    s = _shape(eta)
    gap = kappa * math.pi - 4.0 * t * (1.0 - kappa) * s
    var = _second_moment(eta) - 2.0 * math.pi * s * s
    with np.errstate(divide="ignore", invalid="ignore"):
        val = 4.0 * math.pi * t * (1.0 - kappa) * (s - 2.0 * t * (1.0 - kappa) / math.pi * var / gap)
    return np.where(gap > 0, val, -np.inf)


def _param_grid():
    step = TOL.optimizer_grid_step
    coarse = np.arange(step, 1.0, step)
    fine = np.logspace(-6, -2, 25)[:-1]
    return np.unique(np.concatenate([fine, coarse, [1.0 - 1e-9]]))


_GRID = _param_grid()


def _maximize(objective, kappa_max=1.0 - 1e-9):
    """Grid scan over (kappa, eta) then coordinate-wise golden refinement."""
    K, E = np.meshgrid(_GRID, _GRID, indexing="ij")
    vals = objective(K, E)
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    best = float(vals[i, j])
    if not math.isfinite(best):
        return -math.inf, math.nan, math.nan
    k, e = float(_GRID[i]), float(_GRID[j])
    ki = (float(_GRID[max(i - 1, 0)]) * (i > 0), float(_GRID[min(i + 1, _GRID.size - 1)]))
    ej = (float(_GRID[max(j - 1, 0)]) * (j > 0), float(_GRID[min(j + 1, _GRID.size - 1)]))
    lo_k, hi_k = max(ki[0], 1e-12), min(ki[1], kappa_max)
    lo_e, hi_e = max(ej[0], 1e-12), min(ej[1], 1.0)
    for _ in range(6):
        k2, v2 = golden_section_max(lambda x: float(objective(x, e)), lo_k, hi_k, xtol=1e-12)
        if v2 > best:
            k, best = k2, v2
        e2, v2 = golden_section_max(lambda y: float(objective(k, y)), lo_e, hi_e, xtol=1e-12)
        if v2 > best:
            e, best = e2, v2
    return best, k, e


def f_ideal(t, method="best"):
    """Lower bound f(t) on the ideal two-particle energy; t/6 <= f <= 2 pi t.

    Methods: ``projection-fixed`` (kappa = eta = 0.68), ``projection-opt``,
    ``temple-opt`` and ``best`` (the larger of the two optimized values,
    clipped at 2 pi t). The operator bound H is halved to give f.
    """
    t = float(t)
    if not (math.isfinite(t) and t >= 0):
        raise DomainError(f"t must be finite and >= 0, got {t!r}")
    cap = 2.0 * math.pi * t
    if t == 0.0:
        return BoundReport.from_terms(method, {"f": 0.0}, t=0.0)
    if method == "projection-fixed":
        H, mu = projection_value(t, FIXED_KAPPA, FIXED_ETA)
        H, mu = float(H), float(mu)
        return BoundReport.from_terms(method, {"f": min(0.5 * H, cap)}, t=t, operator=H, mu=mu,
                                      kappa=FIXED_KAPPA, eta=FIXED_ETA)
    if method == "projection-opt":
        H, k, e = _maximize(lambda K, E: projection_value(t, K, E)[0])
        mu = float(projection_value(t, k, e)[1])
        return BoundReport.from_terms(method, {"f": min(0.5 * max(H, 0.0), cap)}, t=t,
                                      operator=H, mu=mu, kappa=k, eta=e)
    if method == "temple-opt":
        H, k, e = _maximize(lambda K, E: temple_value(t, K, E))
        H = max(H, 0.0)
        return BoundReport.from_terms(method, {"f": min(0.5 * H, cap)}, t=t, operator=H,
                                      kappa=k, eta=e)
    if method == "best":
        proj = f_ideal(t, "projection-opt")
        temp = f_ideal(t, "temple-opt")
        win = proj if proj.value >= temp.value else temp
        return BoundReport.from_terms("best", {"f": min(win.value, cap)}, t=t, method=win.regime,
                                      projection=proj.value, temple=temp.value,
                                      **{k: v for k, v in win.parameters.items() if k != "t"})
    raise DomainError(f"unknown method {method!r}")


# -- thermodynamic bounds -------------------------------------------------

def gas_lower_bound(params, n_total=None):
    """Universal lower bound on e(alpha, gamma_bar).

    C (SR + LR) with
    SR = 2 pi |a| min(2 (1 - gb^2/4)^-1, K) / (K + 2|a| ln(2/gb))  for gb < 2,
         2 pi |a|                                                  for gb >= 2,
    LR = pi g(c a_*, 12 gb / sqrt2)^2 (1 - 12 gb / sqrt2)_+^3.
    a_* is replaced by alpha_N when n_total is finite.
    """
    alpha, gb = params.alpha, float(params.gamma_bar)
    C, c = params.constant_C, params.constant_c
    a = abs(float(alpha))
    frac = _fractionality(alpha, n_total)
    base = {"C": C, "c": c, "alpha_frac": frac, "gamma_bar": gb}
    if a == 0.0:
        return BoundReport.from_terms("free", {"short_range": 0.0, "long_range": 0.0}, **base)
    K = k_alpha(a)
    if gb >= 2.0:
        sr = 2.0 * math.pi * a
        regime = "dense"
    elif gb == 0.0:
        sr = 0.0
        regime = "dilute"
    else:
        weight = min(2.0 / (1.0 - 0.25 * gb * gb), K)
        sr = 2.0 * math.pi * a * weight / (K + 2.0 * a * (math.log(2.0) - math.log(gb)))
        regime = "dilute"
    scaled = 12.0 * gb / SQRT2
    if scaled >= 1.0:
        lr, g = 0.0, None
    else:
        g = g_value(c * float(frac), scaled).value
        lr = math.pi * g * g * (1.0 - scaled) ** 3
    return BoundReport.from_terms(regime, {"short_range": C * sr, "long_range": C * lr},
                                  K_alpha=K, g=g, **base)


def gas_ideal_lower(alpha):
    """e(alpha, 0) >= f((j'_{alpha_*})^2) / 4."""
    star = alpha_star(alpha)
    jp = j_prime_zero(float(star)).value
    t = jp * jp
    f = f_ideal(t, "best")
    return BoundReport.from_terms("ideal", {"long_range": 0.25 * f.value}, alpha_star=star,
                                  t=t, f=f.value, method=f.parameters.get("method"))


def soft_core_valid(alpha, gamma_bar, epsilon):
    """|alpha| <= eps^5 min(gamma_bar^2, eps^3 / gamma_bar^4) with 0 < eps < sqrt(pi)/8."""
    if not 0.0 < epsilon < math.sqrt(math.pi) / 8.0 or gamma_bar <= 0:
        return False
    limit = epsilon ** 5 * min(gamma_bar ** 2, epsilon ** 3 / gamma_bar ** 4)
    return abs(float(alpha)) <= limit


def soft_core_gas_bound(alpha, gamma_bar, epsilon):
    """Soft-core regime bound e >= 2 pi |alpha| x ratio, reported as the ratio.

    kappa = eps and box length ell = eps^-1/2 max(1, eps^-1/2 gamma_bar)
    (density set to 1). Outside the validity region the report is flagged
    ``invalid`` with value 0.
    """
    a = abs(float(alpha))
    gb = float(gamma_bar)
    eps = float(epsilon)
    base = {"kappa": eps, "epsilon": eps, "gamma_bar": gb}
    if not soft_core_valid(a, gb, eps):
        return BoundReport.from_terms("invalid", {"normalized": 0.0}, valid=False, **base)
    ell = eps ** -0.5 * max(1.0, eps ** -0.5 * gb)
    gap = math.pi ** 2 * eps / (1.0 - eps) - 32.0 * math.pi * a * ell ** 4
    if gap <= 0:
        return BoundReport.from_terms("invalid", {"normalized": 0.0}, valid=False, ell=ell, **base)
    factors = (1.0 - eps,
               max(1.0 - 1.0 / ell ** 2, 0.0),
               max(1.0 - 2.0 * gb / ell, 0.0) ** 2,
               max(1.0 - 32.0 * a * ell ** 6 / (gb * gb * gap), 0.0))
    ratio = math.prod(factors)
    return BoundReport.from_terms("soft-core", {"normalized": ratio}, valid=True, ell=ell,
                                  factors=list(factors), energy=2.0 * math.pi * a * ratio, **base)


@dataclass(frozen=True)
class LTCoefficients:
    """Lieb-Thirring coefficients (j'_{alpha_N})^2 and its reciprocal.

    The universal constants C and C' = 1/(4C) are left symbolic; ``scaled``
    applies a chosen C.
    """
    alpha_frac: object
    kinetic_coeff: float
    potential_coeff: float
    potential_defined: bool
    relation: str = "C' = 1/(4C)"

    def scaled(self, C):
        return C * self.kinetic_coeff, self.potential_coeff / (4.0 * C)


def lt_coefficients(alpha, n_total):
    frac = alpha_n(alpha, n_total)
    jp = j_prime_zero(float(frac)).value
    kin = jp * jp
    if kin == 0.0:
        return LTCoefficients(frac, 0.0, math.inf, False)
    return LTCoefficients(frac, kin, 1.0 / kin, True)
