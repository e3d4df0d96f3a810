"""Disk intersections, the one-particle flux profile and particle layouts.

A background particle at distance d from the pair's centre carries a unit
flux spread uniformly over a disk of radius R. ``flux_fraction`` is the part
of that flux inside the circle of radius r, and ``profile`` is its radial
derivative f(d, r).
"""
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import TOL, DomainError


def _out(value, *inputs):
    if all(np.ndim(v) == 0 for v in inputs):
        return float(value)
    return value


def _triangle_angle(p, q, opposite):
    """Angle between sides p and q of a triangle, from half-angle tangents.

    Stays accurate near degenerate triangles where the arccos of the cosine
    rule loses half the digits.
    """
    s1 = np.maximum(opposite + p - q, 0.0) * np.maximum(opposite - p + q, 0.0)
    s2 = np.maximum(p + q + opposite, 0.0) * np.maximum(p + q - opposite, 0.0)
    return 2.0 * np.arctan2(np.sqrt(s1), np.sqrt(s2))


def _chord_excess(x):
    """x - sin x, with a series where the difference cancels."""
    x = np.asarray(x, dtype=float)
    x2 = x * x
    series = x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    return np.where(x < 1e-2, series, x - np.sin(x))


def disk_intersection_area(r1, r2, d):
    """Area of the intersection of two disks with radii r1, r2 and centre
    distance d. Broadcasts over array inputs."""
    r1a, r2a, da = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (r1, r2, d)))
    if np.any(r1a < 0) or np.any(r2a < 0) or np.any(da < 0):
        raise DomainError("radii and distance must be non-negative")
    small = np.minimum(r1a, r2a)
    big = np.maximum(r1a, r2a)
    out = np.zeros(small.shape)
    inside = da + small <= big
    out[inside] = np.pi * small[inside] ** 2
    lens = ~inside & (da < small + big)
    if np.any(lens):
        a, b, c = small[lens], big[lens], da[lens]
        half_a = _triangle_angle(a, c, b)
        half_b = _triangle_angle(b, c, a)
        out[lens] = 0.5 * (a * a * _chord_excess(2 * half_a) + b * b * _chord_excess(2 * half_b))
    return _out(out, r1, r2, d)


def flux_fraction(d, r, R):
    """F(d, r): fraction of one particle's flux disk inside radius r."""
    if R <= 0:
        raise DomainError(f"disk radius must be positive, got {R!r}")
    val = np.clip(np.asarray(disk_intersection_area(r, R, d)) / (np.pi * R * R), 0.0, 1.0)
    return _out(val, d, r)


def profile(d, r, R):
    """One-particle profile f(d, r) = dF/dr.

    2r/R^2 for r <= R - d, 0 for r > R + d or r < d - R, and
    (2r / (pi R^2)) arccos((d^2 + r^2 - R^2) / (2 d r)) in between.
    """
    if R <= 0:
        raise DomainError(f"disk radius must be positive, got {R!r}")
    da, ra = np.broadcast_arrays(np.asarray(d, dtype=float), np.asarray(r, dtype=float))
    out = np.zeros(da.shape)
    inner = ra <= R - da
    out[inner] = 2.0 * ra[inner] / (R * R)
    mid = ~inner & (ra <= R + da) & (ra >= da - R) & (ra > 0)
    if np.any(mid):
        dm, rm = da[mid], ra[mid]
        out[mid] = 2.0 * rm / (np.pi * R * R) * _triangle_angle(dm, rm, np.full(dm.shape, R))
    return _out(out, d, r)


def profile_upper(d, r, R):
    """Box envelope (2/R) on the open interval (d - R, d + R)."""
    da, ra = np.broadcast_arrays(np.asarray(d, dtype=float), np.asarray(r, dtype=float))
    out = np.where((ra > da - R) & (ra < da + R), 2.0 / R, 0.0)
    return _out(out, d, r)


def profile_lower(d, r, R):
    """Tent envelope with apex 2/(pi R) at r = d and feet at d -+ R.

    It bounds the profile from below for r >= R.
    """
    da, ra = np.broadcast_arrays(np.asarray(d, dtype=float), np.asarray(r, dtype=float))
    c = 2.0 / (np.pi * R * R)
    rising = (ra > da - R) & (ra < da)
    falling = (ra >= da) & (ra < da + R)
    out = np.where(rising, c * (R - da + ra), np.where(falling, c * (da + R - ra), 0.0))
    return _out(out, d, r)


@dataclass(frozen=True)
class ConcavityReport:
    ok: bool
    interval: tuple
    worst_second_difference: float
    worst_r: float
    threshold: float


def check_concavity(d, R, grid=1000):
    """Second-difference test of concavity of f(d, .).

    The tested interval is the support intersected with [R, inf), or the
    whole support when d >= R. The first and last interior points are
    skipped since f is not twice differentiable at the support edges.
    """
    if grid < 100:
        raise DomainError(f"grid must be >= 100, got {grid}")
    lo = d - R if d >= R else R
    hi = d + R
    r = np.linspace(lo, hi, grid + 1)
    f = profile(d, r, R)
    second = f[2:] - 2.0 * f[1:-1] + f[:-2]
    second = second[1:-1]
    k = int(np.argmax(second))
    threshold = TOL.concavity_rel * 2.0 / R
    worst = float(second[k])
    return ConcavityReport(worst <= threshold, (float(lo), float(hi)), worst,
                           float(r[k + 2]), threshold)


def shape_lemma_margin(d, r1, r2, r, R):
    """f(d, r1) + f(d, r2) - f(d, r); vectorized, no precondition checks."""
    return profile(d, r1, R) + profile(d, r2, R) - profile(d, r, R)


def check_shape_lemma(d, r1, r2, r, R):
    """True when f(d, r1) + f(d, r2) >= f(d, r) up to 1e-12 / R.

    Requires r1 >= R, r2 - r1 <= R/2 and r1 <= r <= r2.
    """
    slack = 1e-12 * R
    if r1 < R - slack or r2 - r1 > 0.5 * R + slack or not (r1 - slack <= r <= r2 + slack):
        raise DomainError(f"shape lemma needs r1 >= R, r2 - r1 <= R/2, r in [r1, r2]; "
                          f"got r1={r1}, r2={r2}, r={r}, R={R}")
    return bool(shape_lemma_margin(d, r1, r2, r, R) >= -TOL.shape_slack / R)


@dataclass(frozen=True)
class ParticleConfig:
    """Disk radius R and sorted distances of the background particles."""
    disk_radius: float
    distances: tuple = ()
    alpha: Fraction = field(default=None, compare=False)

    def __post_init__(self):
        ds = tuple(sorted(float(x) for x in self.distances))
        if any(not math.isfinite(x) or x < 0 for x in ds):
            raise DomainError("distances must be finite and non-negative")
        if not (math.isfinite(self.disk_radius) and self.disk_radius >= 0):
            raise DomainError(f"disk radius must be finite and >= 0, got {self.disk_radius!r}")
        object.__setattr__(self, "distances", ds)
        object.__setattr__(self, "disk_radius", float(self.disk_radius))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", Fraction(self.alpha))

    @property
    def n(self):
        return len(self.distances)

    def to_dict(self):
        out = {"R": self.disk_radius}
        if self.alpha is not None:
            out["alpha"] = {"num": self.alpha.numerator, "den": self.alpha.denominator}
        out["distances"] = list(self.distances)
        return out

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        alpha = data.get("alpha")
        if alpha is not None:
            alpha = Fraction(int(alpha["num"]), int(alpha["den"]))
        return cls(float(data["R"]), tuple(data.get("distances", ())), alpha)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def case_rng(seed, case=0):
    """Counter-based generator for one (seed, case) stream."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(case)])))


def _uniform_disk(rng, count, radius):
    rad = radius * np.sqrt(rng.random(count))
    ang = 2.0 * np.pi * rng.random(count)
    return np.column_stack([rad * np.cos(ang), rad * np.sin(ang)])


def sample_config(n, L_over_R, R=1.0, seed=0, mode="uniform-disk", cluster_size=3,
                  case=0, alpha=None):
    """Random background configuration.

    ``uniform-disk`` places n points uniformly in the disk of radius
    L = L_over_R * R. ``clustered`` forms n // cluster_size groups, each
    within R/10 of a uniform group seed, and puts the n % cluster_size
    leftover particles within R of the centre.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    rng = case_rng(seed, case)
    L = L_over_R * R
    if mode == "uniform-disk":
        pts = _uniform_disk(rng, n, L)
    elif mode == "clustered":
        k = int(cluster_size)
        if k < 1:
            raise DomainError("cluster size must be >= 1")
        groups, rest = divmod(n, k)
        near = _uniform_disk(rng, rest, R)
        seeds = _uniform_disk(rng, groups, L)
        members = [s + _uniform_disk(rng, k, 0.1 * R) for s in seeds]
        pts = np.vstack([near, *members]) if n else np.zeros((0, 2))
    else:
        raise DomainError(f"unknown sampling mode {mode!r}")
    return ParticleConfig(R, tuple(np.hypot(pts[:, 0], pts[:, 1])), alpha)
