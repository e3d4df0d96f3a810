"""Randomized property suites behind ``anyonbounds verify``.

Each case draws its inputs from the stream case_rng(seed, case), so any
single case can be replayed from the (seed, case) pair in the report.
"""
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial

import numpy as np

from .bounds import (GasParameters, e_lr, f_ideal, gas_lower_bound, soft_core_gas_bound,
                     soft_core_valid, temple_soft_core)
from .geometry import (case_rng, check_concavity, check_shape_lemma, disk_intersection_area,
                       profile, sample_config)
from .numerics import adaptive_simpson
from .potential import PotentialProfile, verify_main_radial_bound, verify_projection_lemma
from .runner import ordered_map
from .special import j_prime_zero

SUITES = ("geometry", "potential", "radial-bound", "projection-lemma", "bounds")
POTENTIAL_ALPHAS = (Fraction(1, 3), Fraction(3, 7), Fraction(1))


@dataclass
class CaseOutcome:
    case: int
    seed: int
    checks: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())

    def check(self, name, passed, **evidence):
        """Record one property; keeps the evidence of the first failure."""
        passed = bool(passed)
        self.checks[name] = self.checks.get(name, True) and passed
        if not passed and name not in self.notes:
            self.notes[name] = evidence
        return passed


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int
    passed: int
    elapsed: float
    failures: list

    @property
    def ok(self):
        return self.passed == self.cases

    def to_dict(self):
        out = asdict(self)
        out["ok"] = self.ok
        out["first_counterexample"] = self.failures[0] if self.failures else None
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


# -- geometry ----------------------------------------------------------------

def geometry_case(case, seed):
    rng = case_rng(seed, case)
    out = CaseOutcome(case, seed)
    r1, r2 = rng.uniform(0.05, 3.0, 2)
    d = rng.uniform(0.0, 6.0)
    out.inputs.update(r1=r1, r2=r2, d=d)
    a = disk_intersection_area(r1, r2, d)
    out.check("area-symmetric", abs(a - disk_intersection_area(r2, r1, d)) <= 1e-12 * max(a, 1.0),
              area=a)
    out.check("area-range", -1e-15 <= a <= math.pi * min(r1, r2) ** 2 * (1 + 1e-12), area=a)
    step = 1e-3
    out.check("area-monotone",
              disk_intersection_area(r1 + step, r2, d) >= a - 1e-12
              and disk_intersection_area(r1, r2 + step, d) >= a - 1e-12, area=a)
    for name, edge in (("inner", abs(r1 - r2)), ("outer", r1 + r2)):
        lo = disk_intersection_area(r1, r2, max(edge - 1e-9, 0.0))
        hi = disk_intersection_area(r1, r2, edge + 1e-9)
        out.check("area-continuous", abs(lo - hi) <= 1e-6, edge=name, left=lo, right=hi)

    R = 1.0
    dd = rng.uniform(0.0, 10.0)
    r_lo = max(R, dd - R - 0.25)
    sr1 = rng.uniform(r_lo, max(r_lo, dd + R))
    sr2 = sr1 + rng.uniform(0.0, 0.5 * R)
    sr = rng.uniform(sr1, sr2)
    out.inputs.update(shape=(dd, sr1, sr2, sr))
    out.check("shape-lemma", check_shape_lemma(dd, sr1, sr2, sr, R), d=dd, r1=sr1, r2=sr2, r=sr)

    dc = rng.uniform(0.1, 5.0)
    rep = check_concavity(dc, R)
    out.check("concavity", rep.ok, d=dc, worst=rep.worst_second_difference, at=rep.worst_r)

    lo, hi = max(dc - R, 0.0), dc + R
    bps = [x for x in (R - dc, dc) if lo < x < hi]
    total = adaptive_simpson(lambda r: profile(dc, r, R), lo, hi, tol=1e-11, breakpoints=bps,
                           vectorized=True)
    out.check("profile-normalized", abs(total - 1.0) <= 1e-8, d=dc, integral=total)
    return out


# -- effective potential -------------------------------------------------------

def _random_profile(rng, seed, case, alphas=POTENTIAL_ALPHAS, L_over_R=20.0):
    n = int(rng.integers(1, 31))
    alpha = alphas[int(rng.integers(len(alphas)))]
    cfg = sample_config(n, L_over_R, seed=seed, case=case, alpha=alpha)
    return PotentialProfile(cfg, alpha), cfg


def _excluded(r, intervals):
    """Points inside some open (z_minus, z_plus); missing ends are unbounded."""
    mask = np.zeros(r.shape, dtype=bool)
    for iv in intervals:
        a = -math.inf if iv.z_minus is None else iv.z_minus
        b = math.inf if iv.z_plus is None else iv.z_plus
        mask |= (r > a) & (r < b)
    return mask


def potential_case(case, seed):
    rng = case_rng(seed, case)
    prof, cfg = _random_profile(rng, seed, case)
    out = CaseOutcome(case, seed, inputs={"config": cfg.to_dict(), "alpha": prof.alpha})
    R = prof.R
    lo, hi = prof.window
    st = prof.extract_structure()
    a = float(prof.alpha)
    an2 = prof.alpha_n ** 2
    d = np.asarray(cfg.distances)
    for iv in st.intervals:
        out.check("rho-zero", prof.rho(iv.r_q) <= 1e-12, q=iv.q, r_q=iv.r_q, rho=prof.rho(iv.r_q))
        if iv.complete:
            out.check("interval-length", iv.length <= 2 * R * (1 + 1e-12), q=iv.q, length=iv.length)
            covered = np.any((d - R <= iv.z_minus + 1e-9) & (iv.z_plus <= d + R + 1e-9))
            out.check("covering-particle", covered, q=iv.q, interval=(iv.z_minus, iv.z_plus))
        j_lo = lo if iv.e_minus is None else iv.e_minus
        j_hi = hi if iv.e_plus is None else iv.e_plus
        r = np.linspace(j_lo, j_hi, 257)
        ident = 4 * a * a * (prof.counting(r) - iv.level) ** 2
        err = float(np.max(np.abs(prof.rho(r) - ident)))
        out.check("rho-identity", err <= 1e-10, q=iv.q, error=err)
        off = r[~_excluded(r, [iv])]
        if off.size:
            worst = float(np.min(prof.rho(off)))
            out.check("rho-outside", worst >= an2 - 1e-12, q=iv.q, min_rho=worst, alpha_N_sq=an2)
    cls = prof.classify_intervals(st)
    out.check("bad-fraction", cls.worst_bad_fraction < cls.bad_fraction_bound,
              worst=cls.worst_bad_fraction)
    for item in cls.good:
        if item.weighted_mean is not None:
            out.check("good-mean", item.weighted_mean >= cls.good_mean_bound,
                      q=item.interval.q, mean=item.weighted_mean, bound=cls.good_mean_bound)
    out.notes["zeros"] = len(st.intervals)
    return out


# -- radial inequalities -------------------------------------------------------

def radial_case(case, seed, alpha=Fraction(1, 3), kappa=0.5, grid=2000):
    rng = case_rng(seed, case)
    n = int(rng.integers(0, 31))
    cfg = sample_config(n, 20.0, seed=seed, case=case, alpha=alpha)
    out = CaseOutcome(case, seed, inputs={"config": cfg.to_dict(), "kappa": kappa})
    prof = PotentialProfile(cfg, alpha, (0.5, 20.0))
    rep = verify_main_radial_bound(prof, kappa=kappa, L=20.0, grid=grid)
    out.check("radial-bound", rep.ok, lhs=rep.lhs, rhs=rep.rhs, tolerance=rep.tolerance,
              minimizer=rep.details.get("rhs_minimizer"))
    out.notes.update(lhs=rep.lhs, rhs=rep.rhs)
    return out


def _synthetic_rho(rng):
    kind = ("constant", "half", "steps", "smooth")[int(rng.integers(4))]
    r1 = rng.uniform(1.0, 10.0)
    r2 = r1 + rng.uniform(0.05, 2.0)
    if kind == "constant":
        c0 = rng.uniform(0.0, 1.0)
        return kind, r1, r2, lambda r: np.full(np.shape(r), c0) if np.ndim(r) else c0
    if kind == "half":
        cut = 0.5 * (r1 + r2)
        left = bool(rng.integers(2))
        return kind, r1, r2, lambda r: np.where((np.asarray(r) < cut) == left, 1.0, 0.0)
    if kind == "steps":
        edges = np.sort(rng.uniform(r1, r2, 5))
        vals = rng.uniform(0.0, 1.0, 6)
        return kind, r1, r2, lambda r: vals[np.searchsorted(edges, r)]
    k = rng.uniform(1.0, 8.0)
    ph = rng.uniform(0.0, math.pi)
    return kind, r1, r2, lambda r: np.sin(k * (np.asarray(r) - r1) + ph) ** 2


def projection_case(case, seed, grid=2000):
    rng = case_rng(seed, case)
    kappa = float(rng.uniform(0.05, 1.0))
    out = CaseOutcome(case, seed, inputs={"kappa": kappa})
    source = None
    if case % 2:
        prof, cfg = _random_profile(rng, seed, case)
        ivs = [iv for iv in prof.extract_structure().intervals
               if iv.complete and iv.z_minus >= prof.R]
        if ivs:
            iv = ivs[int(rng.integers(len(ivs)))]
            source = ("extracted", iv.z_minus, iv.z_plus, prof.rho)
            out.inputs.update(config=cfg.to_dict(), alpha=prof.alpha, q=iv.q)
    if source is None:
        source = _synthetic_rho(rng)
    kind, r1, r2, rho = source
    out.inputs.update(kind=kind, interval=(r1, r2))
    rep = verify_projection_lemma(rho, r1, r2, kappa, 1.0, grid=grid)
    out.check("projection-lemma", rep.ok, lhs=rep.lhs, bound=rep.rhs, tolerance=rep.tolerance)
    return out


# -- closed-form bounds --------------------------------------------------------

def bounds_case(case, seed):
    rng = case_rng(seed, case)
    out = CaseOutcome(case, seed)
    alpha = Fraction(int(rng.integers(1, 41)), int(rng.integers(1, 11)))
    while alpha > 4:
        alpha /= 2
    gb = float(10 ** rng.uniform(-4, math.log10(5)))
    out.inputs.update(alpha=alpha, gamma_bar=gb)
    pos = gas_lower_bound(GasParameters(alpha, gb))
    neg = gas_lower_bound(GasParameters(-alpha, gb))
    out.check("gas-even", pos.value == neg.value, plus=pos.value, minus=neg.value)
    if gb >= math.sqrt(2) / 12:
        out.check("lr-vanishes", pos.subterms["long_range"] == 0.0, lr=pos.subterms["long_range"])
    left = gas_lower_bound(GasParameters(alpha, 2 - 1e-8)).value
    right = gas_lower_bound(GasParameters(alpha, 2 + 1e-8)).value
    out.check("sr-continuous", abs(left - right) <= 1e-9, left=left, right=right)

    g1, g2 = sorted(rng.uniform(0.0, 1.0 / 12, 2))
    n_total = int(rng.integers(2, 200))
    l1, l2 = e_lr(alpha, g1, n_total).value, e_lr(alpha, g2, n_total).value
    out.check("e-lr-monotone", l2 <= l1 * (1 + 1e-12) + 1e-300, gammas=(g1, g2), values=(l1, l2))

    t = float(rng.uniform(0.0, j_prime_zero(1.0).value ** 2))
    f = f_ideal(t).value
    out.check("f-sandwich", t / 6 <= f <= 2 * math.pi * t, t=t, f=f)

    eps = float(rng.uniform(1e-3, math.sqrt(math.pi) / 8 * 0.999))
    gs = float(10 ** rng.uniform(-2, 1))
    limit = eps ** 5 * min(gs * gs, eps ** 3 / gs ** 4)
    ok_alpha = limit * float(rng.uniform(0.0, 1.0))
    bad_alpha = limit * float(10 ** rng.uniform(0.01, 3))
    good = soft_core_gas_bound(ok_alpha, gs, eps)
    out.check("soft-core-bound", good.regime == "soft-core" and good.value >= 1 - 10 * eps,
              eps=eps, gamma_bar=gs, alpha=ok_alpha, ratio=good.value)
    bad = soft_core_gas_bound(bad_alpha, gs, eps)
    out.check("soft-core-flag", bad.regime == "invalid" and not soft_core_valid(bad_alpha, gs, eps),
              eps=eps, gamma_bar=gs, alpha=bad_alpha)

    n = int(rng.integers(2, 6))
    tk = temple_soft_core(alpha, float(rng.uniform(0.5, 3.0)), n, float(rng.uniform(0.05, 0.95)))
    out.check("temple-support", tk.value == 0.0, value=tk.value)
    return out


CASES = {"geometry": geometry_case, "potential": potential_case, "radial-bound": radial_case,
         "projection-lemma": projection_case, "bounds": bounds_case}


def run_suite(name, cases=10, seed=0, workers=None, progress=None):
    """Run ``cases`` cases of one suite; failures carry their inputs."""
    if cases < 1:
        raise ValueError(f"cases must be >= 1, got {cases}")
    func = CASES[name]
    start = time.perf_counter()
    results = ordered_map(partial(_run_one, func, seed), range(cases), workers)
    failures = []
    for res in results:
        if not res.ok:
            failures.append(_jsonable({"case": res.case, "seed": res.seed,
                                       "failed": [k for k, v in res.checks.items() if not v],
                                       "inputs": res.inputs, "evidence": res.notes}))
    report = SuiteReport(name, seed, cases, cases - len(failures),
                         time.perf_counter() - start, failures)
    if progress is not None:
        progress(report)
    return report


def _run_one(func, seed, case):
    return func(case, seed)


def run_all(cases=10, seed=0, workers=None, progress=None):
    return [run_suite(name, cases, seed, workers, progress) for name in SUITES]
