"""Regenerable datasets behind the figures.

Every dataset is a table of named columns plus optional note lines. CSV
output starts with the run manifest and the notes as '#' lines, then a
header row, then one row per sample written with 17 significant digits.

Column glossary
  gamma_bar      magnetic filling ratio R rho_bar^(1/2)
  alpha          statistics parameter; alpha_star its long-range part
  short_range    C times the short-range exclusion term
  long_range     C times the long-range exclusion term
  e_lower        short_range + long_range, the universal bound on e(alpha, gamma_bar)
  r, N, Phi      radius, counting function, normalized relative flux
  rho            squared distance of Phi to the even integers; rho_over_r = rho / r
  nu, t          Bessel order and t = (j'_nu)^2
  f_projection   f(t) from the optimized projection method
  f_temple       f(t) from the optimized Temple bound
  lower_t_over_6, upper_2pi_t   the universal sandwich t/6 <= f(t) <= 2 pi t
  x, G, G_dilated               G(x) = J'_nu(x) / Y'_nu(x) and G(gamma x)
  e_lr_ideal     f((j'_{alpha_star})^2), the ideal long-range energy
"""
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial

import numpy as np

from .bounds import GasParameters, f_ideal, gas_lower_bound
from .config import DomainError
from .geometry import ParticleConfig, sample_config
from .neumann import bessel_ratio, g_value
from .potential import PotentialProfile
from .runner import ordered_map
from .special import j_prime_zero
from .statistics import alpha_star

FIGURES = ("energy-vs-gamma", "rho-trace", "counting-trace", "f-compare", "g-dilation",
           "ideal-vs-alpha")


@dataclass
class Dataset:
    name: str
    columns: dict
    notes: list = field(default_factory=list)

    @property
    def rows(self):
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def body(self):
        """Header row plus data rows, without comment lines."""
        out = io.StringIO()
        out.write(",".join(self.columns) + "\n")
        cols = [np.asarray(c, dtype=float) for c in self.columns.values()]
        for i in range(self.rows):
            out.write(",".join(format(float(c[i]), ".17g") for c in cols) + "\n")
        return out.getvalue()

    def to_csv(self, manifest=None):
        head = manifest.header_lines() if manifest is not None else []
        head += [f"# {line}" for line in self.notes]
        return "".join(line + "\n" for line in head) + self.body()

    def write(self, path, manifest=None):
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv(manifest))


def _gas_point(gb, alpha, C, c):
    rep = gas_lower_bound(GasParameters(alpha, gb, C, c))
    return rep.subterms["short_range"], rep.subterms["long_range"], rep.value


def energy_vs_gamma(alphas=(Fraction(1, 3), Fraction(2, 3), 1, 2, 3), points=400,
                    gamma_min=1e-3, gamma_max=3.0, log_x=True, C=1.0, c=1.0 / math.sqrt(3.0),
                    workers=None):
    """Universal bound versus gamma_bar, one block of rows per alpha."""
    if points < 2:
        raise DomainError("need at least 2 points")
    grid = (np.geomspace(gamma_min, gamma_max, points) if log_x
            else np.linspace(gamma_min, gamma_max, points))
    cols = {k: [] for k in ("alpha", "alpha_star", "gamma_bar", "short_range", "long_range",
                            "e_lower")}
    for a in alphas:
        a = Fraction(a)
        star = alpha_star(a)
        vals = ordered_map(partial(_gas_point, alpha=a, C=C, c=c), grid, workers)
        for gb, (sr, lr, tot) in zip(grid, vals):
            for key, v in zip(cols, (a, star, gb, sr, lr, tot)):
                cols[key].append(float(v))
    notes = [f"constants: C={C!r} c={c!r}",
             "alphas: " + " ".join(str(Fraction(a)) for a in alphas)]
    return Dataset("energy-vs-gamma", cols, notes)


def rho_trace(config, alpha, points=2000, r_max=None):
    """r, N, Phi, rho and rho/r on [0, r_max]; r_max defaults to max d + R."""
    alpha = Fraction(alpha)
    R = config.disk_radius
    top = r_max if r_max is not None else (max(config.distances, default=0.0) + R)
    prof = PotentialProfile(config, alpha, (0.0, top))
    r = np.linspace(0.0, top, points)
    star = alpha_star(alpha)
    notes = [f"alpha={alpha} alpha_star={star} alpha_star_sq={float(star) ** 2!r}",
             "config: " + config.to_json()]
    return Dataset("rho-trace", prof.trace(r), notes)


def counting_trace(config, alpha=Fraction(3, 7), low=12.0, high=30.0, points=2000):
    """N, Phi and rho over the window where N rises from ``low`` to ``high``.

    The zero structure found in that window is listed in the notes as
    q, r_q, z_minus, z_plus, e_minus, e_plus (blank when outside).
    """
    alpha = Fraction(alpha)
    R = config.disk_radius
    if config.n < high:
        raise DomainError(f"need at least {high} particles, config has {config.n}")
    full = PotentialProfile(config, alpha)
    r_lo = full.crossings([low])[0]
    r_hi = full.crossings([high - 1e-9])[0]
    if not (math.isfinite(r_lo) and math.isfinite(r_hi)):
        raise DomainError("counting function never reaches the requested levels")
    lo = max(r_lo, 0.5 * R)
    prof = PotentialProfile(config, alpha, (lo, r_hi))
    r = np.linspace(lo, r_hi, points)
    data = prof.trace(r)
    data.pop("rho_over_r")
    notes = [f"alpha={alpha} alpha_star_sq={float(alpha_star(alpha)) ** 2!r}",
             "config: " + config.to_json(),
             "structure: q,r_q,z_minus,z_plus,e_minus,e_plus"]
    fmt = lambda v: "" if v is None else format(v, ".17g")
    for iv in prof.extract_structure().intervals:
        notes.append("point: " + ",".join([str(iv.q)] + [fmt(v) for v in (
            iv.r_q, iv.z_minus, iv.z_plus, iv.e_minus, iv.e_plus)]))
    return Dataset("counting-trace", data, notes)


def _f_pair(nu):
    t = j_prime_zero(nu).value ** 2
    return (t, f_ideal(t, "projection-opt").value, f_ideal(t, "temple-opt").value)


def f_compare(nu_max=1.0, points=200, workers=None):
    """Optimized projection and Temple values of f((j'_nu)^2) with the sandwich."""
    nus = np.linspace(0.0, nu_max, points)
    vals = ordered_map(_f_pair, nus, workers)
    t = np.array([v[0] for v in vals])
    cols = {"nu": nus, "t": t, "f_projection": [v[1] for v in vals],
            "f_temple": [v[2] for v in vals], "lower_t_over_6": t / 6.0,
            "upper_2pi_t": 2.0 * math.pi * t}
    return Dataset("f-compare", cols)


def g_dilation(nu=1.0, gamma=0.5, points=400, x_max=None):
    """G(x) and G(gamma x) with G = J'_nu / Y'_nu, crossing at x = g(nu, gamma)."""
    root = g_value(nu, gamma)
    jp = j_prime_zero(nu).value
    top = x_max if x_max is not None else 1.1 * max(jp, nu / gamma)
    x = np.linspace(top / points, top, points)
    cols = {"x": x, "G": [bessel_ratio(nu, v) for v in x],
            "G_dilated": [bessel_ratio(nu, gamma * v) for v in x]}
    notes = [f"nu={nu!r} gamma={gamma!r} g={root.value!r} j_prime={jp!r} nu_over_gamma={nu / gamma!r}"]
    return Dataset("g-dilation", cols, notes)


def _ideal_point(alpha):
    star = alpha_star(alpha)
    t = j_prime_zero(float(star)).value ** 2
    return float(star), t, f_ideal(t, "projection-opt").value


def ideal_vs_alpha(max_den=40, workers=None):
    """f((j'_{alpha_star})^2) over all reduced p/q in (0, 1] with q <= max_den.

    Rationals are used because alpha_star is discontinuous at every
    odd-numerator fraction; a float grid would only see alpha_star = 0.
    """
    alphas = sorted({Fraction(p, q) for q in range(1, max_den + 1) for p in range(1, q + 1)})
    vals = ordered_map(_ideal_point, alphas, workers)
    cols = {"alpha": [float(a) for a in alphas], "alpha_num": [a.numerator for a in alphas],
            "alpha_den": [a.denominator for a in alphas], "alpha_star": [v[0] for v in vals],
            "t": [v[1] for v in vals], "e_lr_ideal": [v[2] for v in vals]}
    return Dataset("ideal-vs-alpha", cols, ["method: projection-opt"])


def default_config(figure, n=None, l_over_r=None, seed=0, alpha=None):
    """Default random layouts for the rho and counting traces."""
    if figure == "clustered":
        return sample_config(10 if n is None else n, 60 if l_over_r is None else l_over_r,
                             seed=seed, mode="clustered", alpha=alpha)
    return sample_config(30 if n is None else n, 20 if l_over_r is None else l_over_r,
                         seed=seed, alpha=alpha)
