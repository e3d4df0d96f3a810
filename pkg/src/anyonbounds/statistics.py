"""Fractionality measures of the statistics parameter.

alpha_N = min over p in {0..N-2} of the distance from (2p+1) alpha to the
nearest even integer; alpha_* is its limit as N grows. Exact rationals are
handled with :class:`fractions.Fraction`; floats are treated as reals.
"""
import math
import warnings
from fractions import Fraction
from numbers import Rational

from .config import DomainError


class InexactAlphaWarning(UserWarning):
    """alpha_* was requested for a float, which is not treated as rational."""


def parse_alpha(text):
    """Parse "p/q", an integer or a decimal literal into an exact Fraction."""
    if isinstance(text, Rational):
        return Fraction(text)
    s = str(text).strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse statistics parameter {text!r}") from exc


def _even_distance(x):
    """Distance from x to the nearest even integer (exact for Fractions)."""
    m = x % 2
    return min(m, 2 - m)


def alpha_n(alpha, n_particles):
    """Finite-N fractionality alpha_N.

    For a rational alpha = mu/nu the residues of (2p+1) alpha modulo 2 repeat
    with period nu in p, so at most nu terms are needed.
    """
    n = int(n_particles)
    if n < 2:
        raise DomainError(f"alpha_N needs at least 2 particles, got {n_particles!r}")
    if isinstance(alpha, Rational):
        a = Fraction(alpha)
        p_max = min(n - 2, a.denominator - 1)
    else:
        a = float(alpha)
        if not math.isfinite(a):
            raise DomainError(f"alpha must be finite, got {alpha!r}")
        p_max = n - 2
    best = None
    for p in range(p_max + 1):
        d = _even_distance((2 * p + 1) * a)
        if best is None or d < best:
            best = d
            if d == 0:
                break
    return best


def alpha_star(alpha):
    """Limit fractionality alpha_*: 1/nu for reduced mu/nu with mu odd, else 0.

    Floats are not assumed to encode a rational: they return 0 and emit an
    :class:`InexactAlphaWarning`.
    """
    if not isinstance(alpha, Rational):
        warnings.warn(f"alpha={alpha!r} is not an exact rational; alpha_* taken as 0",
                      InexactAlphaWarning, stacklevel=2)
        return Fraction(0)
    a = Fraction(alpha)
    if a.numerator % 2:
        return Fraction(1, a.denominator)
    return Fraction(0)


def alpha_n_convergence(alpha, n_max):
    """The sequence (alpha_N) for N = 2..n_max as a list."""
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max!r}")
    a = Fraction(alpha) if isinstance(alpha, Rational) else float(alpha)
    out = []
    best = None
    for n in range(2, n_max + 1):
        d = _even_distance((2 * (n - 2) + 1) * a)
        best = d if best is None else min(best, d)
        out.append(best)
    return out
