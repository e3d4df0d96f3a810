"""Counting function, effective potential and its zero structure.

For a configuration of background particles at distances d_l, the counting
function N(r) adds up the flux fractions F(d_l, r). The relative flux seen by
the pair is Phi(r) = alpha (min((2r/R)^2, 1) + 2 N(r)) and the effective
potential rho(r) is the squared distance of Phi(r) to the even integers.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from .config import TOL, DomainError
from .geometry import ParticleConfig, disk_intersection_area, profile
from .numerics import adaptive_simpson, golden_section_max, radial_ground_state
from .statistics import alpha_n

_LN3 = math.log(3.0)


def beta_kappa(kappa):
    """Projection constant beta(kappa); satisfies kappa < beta < kappa + 1/4."""
    k = float(kappa)
    pi2 = math.pi ** 2
    return (pi2 * k + math.sqrt(pi2 * pi2 * k * k + 4.0 * _LN3 ** 4) + 2.0 * _LN3 ** 2) / (2.0 * pi2)


def bad_fraction_bound(C):
    """Upper bound 8C(pi - C^2)/(pi - 2C^2) on the part of a length-R/2
    interval covered by bad intervals."""
    return 8.0 * C * (math.pi - C * C) / (math.pi - 2.0 * C * C)


def smearing_prefactor_sq(C):
    """(C^4 / (14 pi^2)) (1/2 - 4C(pi - C^2)/(pi - 2C^2)); c(kappa)^2 without
    the kappa factor. Negative when the bad fraction exceeds one half."""
    return C ** 4 / (14.0 * math.pi ** 2) * (0.5 - 0.5 * bad_fraction_bound(C))


@dataclass(frozen=True)
class SmearingConstants:
    kappa: float
    beta_of_kappa: float
    c_of_kappa: float
    smear_C: float
    prefactor: float


def optimize_smearing(kappa=1.0):
    """Best smearing constant C by grid scan and golden-section refinement.

    ``prefactor`` is c(kappa) (1 + 2 kappa)/kappa, i.e. the number that the
    closed forms write as 4.7e-4 or 5.3e-4.
    """
    step = TOL.optimizer_grid_step
    grid = np.arange(step, 1.0, step)
    vals = [smearing_prefactor_sq(C) for C in grid]
    k = int(np.argmax(vals))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    C, val = golden_section_max(smearing_prefactor_sq, lo, hi, xtol=1e-12)
    pref = 2.0 * math.sqrt(max(val, 0.0))
    kappa = float(kappa)
    return SmearingConstants(kappa, beta_kappa(kappa), pref * kappa / (1 + 2 * kappa), C, pref)


def c_kappa(kappa, variant="stated"):
    """c(kappa) = prefactor * kappa / (1 + 2 kappa).

    ``stated`` uses 4.7e-4, ``derived`` 5.3e-4 and ``optimize`` the value
    from :func:`optimize_smearing`.
    """
    k = float(kappa)
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"kappa must lie in [0, 1], got {kappa!r}")
    if variant == "stated":
        pref = 4.7e-4
    elif variant == "derived":
        pref = 5.3e-4
    elif variant == "optimize":
        pref = optimize_smearing(k).prefactor
    else:
        raise DomainError(f"unknown c(kappa) variant {variant!r}")
    return pref * k / (1.0 + 2.0 * k)


@dataclass(frozen=True)
class ZeroInterval:
    """One zero r_q of rho with its neighbouring level points.

    z_minus/z_plus are the nearest points where N is an integer, e_minus/e_plus
    the nearest points where rho = 1. None means the point lies outside the
    window.
    """
    q: int
    r_q: float
    level: float
    z_minus: float = None
    z_plus: float = None
    e_minus: float = None
    e_plus: float = None

    @property
    def complete(self):
        return self.z_minus is not None and self.z_plus is not None

    @property
    def length(self):
        return self.z_plus - self.z_minus if self.complete else math.nan


@dataclass(frozen=True)
class IntervalStructure:
    window: tuple
    intervals: tuple = ()
    flat_levels: tuple = ()

    @property
    def zeros(self):
        return [(iv.q, iv.r_q) for iv in self.intervals]

    @property
    def i_intervals(self):
        return [(iv.z_minus, iv.z_plus) for iv in self.intervals]

    @property
    def e_points(self):
        return [(iv.e_minus, iv.e_plus) for iv in self.intervals]


@dataclass(frozen=True)
class IntervalClass:
    interval: ZeroInterval
    good: bool
    inf_derivative: float
    sup_derivative: float
    weighted_mean: float = None


@dataclass(frozen=True)
class Classification:
    smear_C: float
    items: tuple
    worst_bad_fraction: float
    bad_fraction_bound: float
    good_mean_bound: float

    @property
    def good(self):
        return [c for c in self.items if c.good]

    @property
    def bad(self):
        return [c for c in self.items if not c.good]

    @property
    def ok(self):
        means = [c.weighted_mean for c in self.good if c.weighted_mean is not None]
        return (self.worst_bad_fraction < self.bad_fraction_bound
                and all(m >= self.good_mean_bound for m in means))


@dataclass
class PotentialProfile:
    """Evaluator for N, Phi and rho of one configuration.

    ``window`` defaults to [R/2, max(d) + 2R].
    """
    config: ParticleConfig
    alpha: object
    window: tuple = None
    _d: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if isinstance(self.alpha, Rational):
            self.alpha = Fraction(self.alpha)
        R = self.config.disk_radius
        if R <= 0:
            raise DomainError("the effective potential needs R > 0")
        self._d = np.asarray(self.config.distances, dtype=float)
        if self.window is None:
            top = (self._d.max() if self._d.size else 0.0) + 2.0 * R
            self.window = (0.5 * R, top)
        lo, hi = map(float, self.window)
        if lo < 0 or hi <= lo:
            raise DomainError(f"bad window {self.window!r}")
        self.window = (lo, hi)

    @property
    def R(self):
        return self.config.disk_radius

    @property
    def n_total(self):
        return self.config.n + 2

    @property
    def alpha_n(self):
        return float(alpha_n(self.alpha, self.n_total))

    def counting(self, r):
        """N(r) = sum_l F(d_l, r)."""
        ra = np.asarray(r, dtype=float)
        if self._d.size == 0:
            out = np.zeros(ra.shape)
        else:
            area = disk_intersection_area(ra[..., None], self.R, self._d)
            # divide before summing so fully enclosed particles add exactly 1
            out = np.clip(np.sum(area / (math.pi * self.R ** 2), axis=-1), 0.0, None)
        return float(out) if ra.ndim == 0 else out

    def counting_derivative(self, r):
        """N'(r) = sum_l f(d_l, r)."""
        ra = np.asarray(r, dtype=float)
        if self._d.size == 0:
            out = np.zeros(ra.shape)
        else:
            out = np.sum(profile(self._d, ra[..., None], self.R), axis=-1)
        return float(out) if ra.ndim == 0 else out

    def flux(self, r):
        """Phi(r) = alpha (min((2r/R)^2, 1) + 2 N(r))."""
        ra = np.asarray(r, dtype=float)
        own = np.minimum((2.0 * ra / self.R) ** 2, 1.0)
        out = float(self.alpha) * (own + 2.0 * np.asarray(self.counting(ra)))
        return float(out) if ra.ndim == 0 else out

    def rho(self, r):
        """rho(r) = squared distance of Phi(r) to the nearest even integer."""
        phi = np.asarray(self.flux(r))
        m = np.mod(phi, 2.0)
        out = np.minimum(m, 2.0 - m) ** 2
        return float(out) if np.ndim(r) == 0 else out

    def trace(self, r):
        """Columns r, N, Phi, rho, rho_over_r for CSV output."""
        r = np.asarray(r, dtype=float)
        rho = self.rho(r)
        # rho vanishes like r^4 at the origin, so rho / r -> 0 there
        over = np.where(r > 0, rho / np.where(r > 0, r, 1.0), 0.0)
        return {"r": r, "N": self.counting(r), "Phi": self.flux(r), "rho": rho,
                "rho_over_r": over}

    def breakpoints(self, lo=None, hi=None):
        """Radii where N' is not smooth: d, d - R, d + R and R - d."""
        R = self.R
        pts = np.concatenate([self._d, self._d - R, self._d + R, R - self._d])
        lo = self.window[0] if lo is None else lo
        hi = self.window[1] if hi is None else hi
        return np.unique(pts[(pts > lo) & (pts < hi)])

    # -- level crossings ------------------------------------------------

    def _scan(self):
        lo, hi = self.window
        step = TOL.scan_step_over_R * self.R
        r = np.append(np.arange(lo, hi, step), hi)
        n = np.maximum.accumulate(self.counting(r))
        return r, n

    def crossings(self, levels, strict=False, scan=None):
        """Leftmost radius in the window with N(r) >= level (N > level when
        ``strict``). NaN where the window never reaches the level.

        Bisection on all levels at once, seeded by a scan at resolution R/64.
        """
        levels = np.atleast_1d(np.asarray(levels, dtype=float))
        r_scan, n_scan = self._scan() if scan is None else scan
        side = "right" if strict else "left"
        idx = np.searchsorted(n_scan, levels, side=side)
        out = np.full(levels.shape, math.nan)
        at_start = idx == 0
        out[at_start] = r_scan[0]
        live = (idx > 0) & (idx < r_scan.size)
        if np.any(live):
            lo = r_scan[idx[live] - 1].copy()
            hi = r_scan[idx[live]].copy()
            lv = levels[live]
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                val = self.counting(mid)
                hit = val > lv if strict else val >= lv
                hi = np.where(hit, mid, hi)
                lo = np.where(hit, lo, mid)
                if np.all(hi - lo <= 2.0 * np.finfo(float).eps * hi):
                    break
            out[live] = hi
        return out

    def window_for_counts(self, low, high):
        """Radii where N first reaches ``low`` and ``high``."""
        r = self.crossings([low, high])
        return float(r[0]), float(r[1])

    def extract_structure(self):
        """Zeros r_q of rho and the points z-+_q, e-+_q around each."""
        lo, hi = self.window
        if lo < 0.5 * self.R * (1 - 1e-12):
            raise DomainError("structure extraction needs a window inside [R/2, inf)")
        a = abs(self.alpha)
        if a == 0:
            return IntervalStructure(self.window)
        exact = isinstance(a, Fraction)
        scan = self._scan()
        n_lo, n_hi = scan[1][0], scan[1][-1]
        q_first = math.ceil(float(a) * (n_lo + 0.5) - 1e-12)
        q_last = math.floor(float(a) * (n_hi + 0.5) + 1e-12)
        qs = [q for q in range(max(q_first, 0), q_last + 1)]
        if not qs:
            return IntervalStructure(self.window)
        levels = []
        for q in qs:
            lv = Fraction(q) / a - Fraction(1, 2) if exact else q / float(a) - 0.5
            levels.append(lv)
        flv = np.array([float(x) for x in levels])
        keep = (flv >= n_lo - 1e-12) & (flv <= n_hi + 1e-12)
        qs = [q for q, k in zip(qs, keep) if k]
        levels = [lv for lv, k in zip(levels, keep) if k]
        flv = flv[keep]
        if not qs:
            return IntervalStructure(self.window)
        r_q = self.crossings(flv, scan=scan)
        k_lo = np.array([math.ceil(lv) - 1 for lv in levels], dtype=float)
        k_hi = np.array([math.floor(lv) + 1 for lv in levels], dtype=float)
        fa = float(a)
        e_lo = np.array([(2 * q - 1) / (2 * fa) - 0.5 for q in qs])
        e_hi = np.array([(2 * q + 1) / (2 * fa) - 0.5 for q in qs])
        # sup{N <= k} is the leftmost point with N > k
        z_m = np.where(k_lo >= n_lo, self.crossings(k_lo, strict=True, scan=scan), np.nan)
        z_p = np.where(k_hi <= n_hi, self.crossings(k_hi, scan=scan), np.nan)
        e_m = np.where(e_lo >= n_lo, self.crossings(e_lo, strict=True, scan=scan), np.nan)
        e_p = np.where(e_hi <= n_hi, self.crossings(e_hi, scan=scan), np.nan)
        sign = 1 if self.alpha > 0 else -1
        opt = lambda v: None if math.isnan(v) else float(v)
        items = []
        flats = []
        probe = TOL.scan_step_over_R * self.R
        for i, q in enumerate(qs):
            items.append(ZeroInterval(sign * q, float(r_q[i]), float(flv[i]), opt(z_m[i]),
                                      opt(z_p[i]), opt(e_m[i]), opt(e_p[i])))
            if r_q[i] + probe <= hi and abs(self.counting(r_q[i] + probe) - flv[i]) < 1e-14:
                flats.append(float(flv[i]))
        return IntervalStructure(self.window, tuple(items), tuple(flats))

    # -- interval analysis ------------------------------------------------

    def derivative_extrema(self, lo, hi):
        """(inf, sup) of N' on [lo, hi] by sampling plus breakpoints."""
        step = TOL.sup_step_over_R * self.R
        pts = np.concatenate([np.arange(lo, hi, step), [hi], self.breakpoints(lo, hi)])
        vals = self.counting_derivative(pts)
        return float(vals.min()), float(vals.max())

    def weighted_mean(self, lo, hi):
        """1/r-weighted mean of rho over [lo, hi]."""
        num = adaptive_simpson(lambda r: self.rho(r) / r, lo, hi, tol=1e-11,
                               breakpoints=self.breakpoints(lo, hi), vectorized=True)
        return num / math.log(hi / lo)

    def lemma_integral_bound(self, r1, r2):
        """Both sides of  int rho/r >= 2 alpha^2 / (r2 (r2 - r1)) (int N' delta)^2
        with delta(r) = min(r - r1, r2 - r)."""
        bp = self.breakpoints(r1, r2)
        lhs = adaptive_simpson(lambda r: self.rho(r) / r, r1, r2, tol=1e-12, breakpoints=bp,
                               vectorized=True)
        mid = 0.5 * (r1 + r2)
        inner = adaptive_simpson(
            lambda r: self.counting_derivative(r) * np.minimum(r - r1, r2 - r),
            r1, r2, tol=1e-12, breakpoints=np.append(bp, mid), vectorized=True)
        a = float(self.alpha)
        rhs = 2.0 * a * a / (r2 * (r2 - r1)) * inner * inner
        return lhs, rhs

    def classify_intervals(self, structure, smear_C=0.0996):
        """Tag each complete I_q as good or bad and measure bad coverage.

        Good means |I_q| >= C R or inf N' / sup N' >= C^2 / pi. For good
        intervals with z_minus >= R the weighted mean of rho is computed. The
        covered fraction by bad intervals is maximized over length-R/2
        subintervals of the window part above R, sampled with step R/16.
        """
        C = float(smear_C)
        if not 0.0 < C < math.sqrt(math.pi / 2):
            raise DomainError(f"smearing constant must lie in (0, sqrt(pi/2)), got {C}")
        R = self.R
        items = []
        for iv in structure.intervals:
            if not iv.complete:
                continue
            lo_d, hi_d = self.derivative_extrema(iv.z_minus, iv.z_plus)
            good = iv.length >= C * R or (hi_d > 0 and lo_d / hi_d >= C * C / math.pi)
            mean = None
            if good and iv.z_minus >= R:
                mean = self.weighted_mean(iv.z_minus, iv.z_plus)
            items.append(IntervalClass(iv, good, lo_d, hi_d, mean))
        bad = [(c.interval.z_minus, c.interval.z_plus) for c in items if not c.good]
        worst = 0.0
        lo, hi = max(self.window[0], R), self.window[1]
        if bad and hi - lo >= 0.5 * R:
            for start in np.arange(lo, hi - 0.5 * R + 1e-12 * R, R / 16):
                end = start + 0.5 * R
                cover = sum(max(0.0, min(end, b) - max(start, a)) for a, b in bad)
                worst = max(worst, cover / (0.5 * R))
        a = float(self.alpha)
        return Classification(C, tuple(items), worst, bad_fraction_bound(C),
                              a * a * C ** 4 / (24 * math.pi ** 2))


@dataclass(frozen=True)
class RadialCheck:
    """Outcome of a discretized quadratic-form comparison."""
    ok: bool
    lhs: float
    rhs: float
    tolerance: float
    details: dict = field(default_factory=dict)


def verify_main_radial_bound(prof, kappa=0.5, L=None, grid=2000, variant="stated"):
    """Compare the lowest eigenvalues of

        int_R^L (u'^2 + rho u^2 / r^2) r dr   and
        int_R^L ((1 - kappa) u'^2 + c(kappa)^2 alpha_N^2 / r^2 1_[3R, L-3R] u^2) r dr

    against int u^2 r dr on one uniform grid with natural boundary rows.
    """
    R = prof.R
    L = prof.window[1] if L is None else float(L)
    if R > L / 6:
        raise DomainError(f"need R <= L/6, got R={R}, L={L}")
    if grid < 1000:
        raise DomainError(f"grid must be >= 1000, got {grid}")
    r = np.linspace(R, L, int(grid))
    mid = 0.5 * (r[1:] + r[:-1])
    c = c_kappa(kappa, variant)
    an = prof.alpha_n
    lam_l, _, res_l = radial_ground_state(r, mid, prof.rho(r) / r, r)
    rhs_pot = np.where((r >= 3 * R) & (r <= L - 3 * R), c * c * an * an / r, 0.0)
    lam_r, u_r, res_r = radial_ground_state(r, (1.0 - kappa) * mid, rhs_pot, r)
    tol = 1e-8 * abs(lam_r) + 1e-15 * max(1.0, abs(lam_r))
    ok = lam_l >= lam_r - tol
    details = {"alpha_N": an, "c_kappa": c, "kappa": kappa, "L": L, "grid": int(grid),
               "residuals": (res_l, res_r)}
    if not ok:
        details["rhs_minimizer"] = u_r.tolist()
    return RadialCheck(bool(ok), lam_l, lam_r, tol, details)


def verify_projection_lemma(rho, r1, r2, kappa, R, grid=2000):
    """Check  int_I (kappa u'^2 + rho u^2 / r^2) r dr >= (kappa rho_bar / beta) int_I u^2 / r dr.

    ``rho`` is a vectorized callable with values in [0, 1]; rho_bar is its
    1/r-weighted mean over I = [r1, r2]. The allowance is the gap between the
    quadrature mean and the mean implied by the grid weights.
    """
    if r1 < R * (1 - 1e-12) or r2 - r1 > 2 * R * (1 + 1e-12) or r2 <= r1:
        raise DomainError(f"need r1 >= R and 0 < r2 - r1 <= 2R; got r1={r1}, r2={r2}, R={R}")
    r = np.linspace(r1, r2, int(grid))
    vals = np.asarray(rho(r), dtype=float)
    if np.any(vals < -1e-15) or np.any(vals > 1 + 1e-12):
        raise DomainError("rho must take values in [0, 1]")
    mid = 0.5 * (r[1:] + r[:-1])
    lam, _, _ = radial_ground_state(r, kappa * mid, vals / r, 1.0 / r)
    mean_quad = adaptive_simpson(lambda x: np.asarray(rho(x), dtype=float) / x, r1, r2,
                                 tol=1e-10, vectorized=True) / math.log(r2 / r1)
    h = r[1] - r[0]
    w = np.full(r.size, h)
    w[0] = w[-1] = 0.5 * h
    mean_grid = float(np.dot(w, vals / r) / np.dot(w, 1.0 / r))
    beta = beta_kappa(kappa)
    bound = kappa * mean_quad / beta
    tol = kappa / beta * abs(mean_quad - mean_grid) + 1e-9 * abs(bound) + 1e-15
    return RadialCheck(bool(lam >= bound - tol), lam, bound, tol,
                       {"rho_bar": mean_quad, "rho_bar_grid": mean_grid, "beta": beta,
                        "kappa": kappa, "interval": (r1, r2)})
