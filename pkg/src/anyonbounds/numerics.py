"""Small numerical kernels: bracketed root finding, golden-section search,
adaptive Simpson quadrature and a finite-difference radial eigensolver."""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .config import TOL

_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class EigenResult:
    """A computed eigenvalue (or root) with the bracket that certifies it.

    ``residual`` is the half-width of the final bracket for root solves and
    the relative eigen-residual for matrix solves.
    """
    value: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    iterations: int
    meta: dict = field(default_factory=dict, compare=False)

    def __float__(self):
        return float(self.value)


class BracketError(ArithmeticError):
    """Raised when a supposed bracket does not contain a sign change."""


def bracketed_root(func, lo, hi, xtol=TOL.root_abs, maxiter=300):
    """Root of ``func`` inside ``[lo, hi]`` by an Illinois secant step
    safeguarded with bisection.

    The bracket is never abandoned: a secant proposal is accepted only if it
    falls strictly inside the current bracket, and a bisection step is
    forced whenever two consecutive steps fail to halve the bracket.
    """
    a, b = float(lo), float(hi)
    fa, fb = func(a), func(b)
    if fa == 0.0:
        return EigenResult(a, a, a, 0.0, 0)
    if fb == 0.0:
        return EigenResult(b, b, b, 0.0, 0)
    if not (math.isfinite(fa) and math.isfinite(fb)) or (fa > 0) == (fb > 0):
        raise BracketError(f"no sign change on [{a!r}, {b!r}]: f(lo)={fa!r}, f(hi)={fb!r}")
    side = 0
    mark = b - a
    bisect = False
    eps = np.finfo(float).eps
    for it in range(1, maxiter + 1):
        width = b - a
        if width <= max(xtol, 4.0 * eps * max(abs(a), abs(b))):
            x = 0.5 * (a + b)
            return EigenResult(x, a, b, 0.5 * width, it)
        x = 0.5 * (a + b)
        if not bisect:
            xs = (a * fb - b * fa) / (fb - fa)
            if a < xs < b:
                x = xs
        fx = func(x)
        if fx == 0.0:
            return EigenResult(x, x, x, 0.0, it)
        if (fx > 0) == (fb > 0):
            b, fb = x, fx
            if side == -1:
                fa *= 0.5
            side = -1
        else:
            a, fa = x, fx
            if side == 1:
                fb *= 0.5
            side = 1
        # every third step, fall back to bisection unless the bracket halved
        if it % 3 == 0:
            bisect = (b - a) > 0.5 * mark
            mark = b - a
    x = 0.5 * (a + b)
    return EigenResult(x, a, b, 0.5 * (b - a), maxiter, {"converged": False})


def golden_section_max(func, lo, hi, xtol=TOL.golden_xtol, maxiter=200):
    """Maximize a unimodal ``func`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    a, b = float(lo), float(hi)
    c = b - _GOLD * (b - a)
    d = a + _GOLD * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(maxiter):
        if b - a <= xtol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = func(d)
    return (c, fc) if fc >= fd else (d, fd)


def _simpson_segment(f, a, fa, b, fb, tol, maxdepth):
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    # iterative refinement on an explicit stack to avoid deep recursion
    total = 0.0
    stack = [(a, fa, m, fm, b, fb, whole, tol, 0)]
    while stack:
        a, fa, m, fm, b, fb, whole, tol, depth = stack.pop()
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
        right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
        delta = left + right - whole
        if depth >= maxdepth or abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
        else:
            stack.append((a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1))
            stack.append((m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1))
    return total


def _simpson_batched(f, cuts, tol, maxdepth):
    """Breadth-first refinement of all segments at once; f maps arrays."""
    a = np.asarray(cuts[:-1], dtype=float)
    b = np.asarray(cuts[1:], dtype=float)
    m = 0.5 * (a + b)
    fa, fm, fb = (np.asarray(f(x), dtype=float) for x in (a, m, b))
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    seg_tol = tol * (b - a) / (cuts[-1] - cuts[0])
    total = 0.0
    for depth in range(maxdepth + 1):
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        vals = np.asarray(f(np.concatenate([lm, rm])), dtype=float)
        flm, frm = vals[:a.size], vals[a.size:]
        left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
        right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
        delta = left + right - whole
        done = (np.abs(delta) <= 15.0 * seg_tol) | (depth == maxdepth)
        total += float(np.sum((left + right + delta / 15.0)[done]))
        keep = ~done
        if not keep.any():
            break
        a, m, b = a[keep], m[keep], b[keep]
        fa, fm, fb = fa[keep], fm[keep], fb[keep]
        flm, frm = flm[keep], frm[keep]
        left, right, seg_tol = left[keep], right[keep], 0.5 * seg_tol[keep]
        a, m, b, fa, fm, fb, whole, seg_tol = (
            np.concatenate([a, m]), np.concatenate([lm[keep], rm[keep]]),
            np.concatenate([m, b]), np.concatenate([fa, fm]), np.concatenate([flm, frm]),
            np.concatenate([fm, fb]), np.concatenate([left, right]),
            np.concatenate([seg_tol, seg_tol]))
    return total


def adaptive_simpson(f, a, b, tol=TOL.quad_abs, breakpoints=(), maxdepth=50, vectorized=False):
    """Integrate a scalar function over ``[a, b]``.

    Known kinks can be passed as ``breakpoints``; the range is split there
    first and the tolerance shared in proportion to length. With
    ``vectorized`` the integrand is called on arrays of nodes and all
    segments are refined level by level.
    """
    if b == a:
        return 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    cuts = sorted({a, b, *(p for p in breakpoints if a < p < b)})
    if vectorized:
        return sign * _simpson_batched(f, cuts, tol, maxdepth)
    span = b - a
    total = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi <= lo:
            continue
        seg_tol = tol * (hi - lo) / span
        total += _simpson_segment(f, lo, f(lo), hi, f(hi), seg_tol, maxdepth)
    return sign * total


def radial_ground_state(r, stiffness_mid, potential, mass):
    """Lowest eigenpair of a 1D quadratic form on a uniform grid.

    The form is  sum_mid  a_{i+1/2} (u_{i+1}-u_i)^2 / h  +  sum_i w_i V_i u_i^2
    against the mass  sum_i w_i M_i u_i^2, with trapezoid weights w_i. Leaving
    the end rows untouched gives natural (Neumann) boundary conditions.

    Parameters
    ----------
    r : (n,) uniform nodes
    stiffness_mid : (n-1,) coefficient a(r) at midpoints (include the r weight)
    potential : (n,) nodal potential V(r_i) (include the r weight)
    mass : (n,) nodal mass density M(r_i), strictly positive

    Returns
    -------
    lam : float
        Rayleigh quotient of the computed eigenvector
    u : (n,) eigenvector normalized to unit discrete mass
    residual : float
        relative residual |A y - lam y| / max(|lam|, |A|) of the symmetric
        standard-form problem
    """
    r = np.asarray(r, dtype=float)
    n = r.size
    h = (r[-1] - r[0]) / (n - 1)
    w = np.full(n, h)
    w[0] = w[-1] = 0.5 * h
    a = np.asarray(stiffness_mid, dtype=float) / h
    diag = w * np.asarray(potential, dtype=float)
    diag[:-1] += a
    diag[1:] += a
    off = -a
    m = w * np.asarray(mass, dtype=float)
    s = 1.0 / np.sqrt(m)
    d_std = diag * s * s
    e_std = off * s[:-1] * s[1:]
    lam, vec = eigh_tridiagonal(d_std, e_std, select="i", select_range=(0, 0))
    y = vec[:, 0]
    u = y * s
    # Rayleigh quotient of the original form: a sum of non-negative terms,
    # so small eigenvalues keep full relative accuracy
    du = np.diff(u)
    num = np.dot(a, du * du) + np.dot(w * np.asarray(potential, dtype=float), u * u)
    rq = float(num / np.dot(m, u * u))
    ay = d_std * y
    ay[:-1] += e_std * y[1:]
    ay[1:] += e_std * y[:-1]
    scale = max(abs(lam[0]), np.max(np.abs(d_std)) + 2 * np.max(np.abs(e_std), initial=0.0))
    residual = float(np.linalg.norm(ay - lam[0] * y) / scale)
    if u[np.argmax(np.abs(u))] < 0:
        u = -u
    u = u / math.sqrt(np.dot(m, u * u))
    return rq, u, residual
